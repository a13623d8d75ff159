#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "interlace/errors.hpp"
#include "interlace/matrix.hpp"

namespace interlace {

enum class Strictness { strict, weak };
enum class PerturbationMode { rank_one, bordered };
enum class Field { real, complex };

/// Ascending list of real eigenvalues. Strict spectra (base matrices) must be
/// strictly increasing; weak spectra (map images) may carry ties.
class OrderedSpectrum {
 public:
  static OrderedSpectrum strict(std::vector<double> values);
  static OrderedSpectrum weak(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  Strictness strictness() const { return strictness_; }

  double min() const { return values_.front(); }
  double max() const { return values_.back(); }
  double spread() const { return values_.back() - values_.front(); }
  double sum() const;
  double sum_squares() const;
  /// Smallest consecutive gap; +inf for n = 1.
  double min_gap() const;

 private:
  OrderedSpectrum(std::vector<double> values, Strictness s);
  std::vector<double> values_;
  Strictness strictness_ = Strictness::weak;
};

/// Real or complex coordinate vector. The real tag guarantees exactly zero
/// imaginary parts, so real problems never pick up complex round-off.
class FieldVector {
 public:
  static FieldVector make_real(std::vector<double> entries);
  static FieldVector make_complex(std::vector<std::complex<double>> entries);

  Field field() const { return field_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<std::complex<double>>& entries() const { return entries_; }

  std::vector<double> real_entries() const;  // requires field == real
  std::vector<double> magnitudes() const;
  std::vector<double> squared_magnitudes() const;
  double norm_squared() const;

 private:
  FieldVector(std::vector<std::complex<double>> entries, Field f)
      : entries_(std::move(entries)), field_(f) {}
  std::vector<std::complex<double>> entries_;
  Field field_ = Field::real;
};

/// Nonnegative magnitudes in a fixed eigenbasis (identity when absent).
class OrthantVector {
 public:
  static OrthantVector coords(std::vector<double> p);
  static OrthantVector in_basis(std::vector<double> p, ComplexMatrix q, double tol_orth);

  std::size_t size() const { return p_.size(); }
  const std::vector<double>& p() const { return p_; }
  const std::optional<ComplexMatrix>& basis() const { return basis_; }
  double norm_squared() const;

  /// Qp in ambient coordinates (p itself when the basis is the identity).
  FieldVector to_field_vector() const;

 private:
  std::vector<double> p_;
  std::optional<ComplexMatrix> basis_;
};

/// Input data (lambda, v, c) of a bordering problem.
struct BorderedProblem {
  OrderedSpectrum lambda;  // strict
  FieldVector v;           // length n
  double c = 0.0;
};

/// Throws unless the problem satisfies its size/strictness invariants.
void validate(const BorderedProblem& problem);

enum class FaceKind { lower, upper };

/// Boundary contacts of a target spectrum with its interlacing box.
/// `touched` records (mu coordinate, endpoint kind) pairs; `base_indices` the
/// distinct base eigenvalues attained; k = |base_indices|.
struct FaceProfile {
  std::set<std::pair<std::size_t, FaceKind>> touched;
  std::set<std::size_t> base_indices;
  std::size_t k = 0;

  bool interior() const { return touched.empty(); }
};

struct TolerancePolicy {
  double tol_gap = 1e-10;   // relative gap threshold for a simple spectrum
  double tol_face = 1e-9;   // absolute face-membership threshold
  double tol_res = 1e-10;   // residual threshold for certificates
  double tol_orth = 1e-10;  // orthonormality threshold

  /// Defaults with tol_face scaled to the base spectrum: 1e-9 * (spread + 1).
  static TolerancePolicy for_spectrum(const OrderedSpectrum& lambda);

  void validate() const;
};

/// The per-spectrum policy unless the caller supplied an override.
TolerancePolicy resolve_policy(const std::optional<TolerancePolicy>& tol,
                               const OrderedSpectrum& lambda);

/// Combined span of base and target spectra, used to scale residual checks.
/// Returns 1 for the degenerate all-equal case.
double problem_scale(const OrderedSpectrum& lambda, const OrderedSpectrum& mu);

/// Rejects base spectra with a relative gap below tol_gap.
void require_simple(const OrderedSpectrum& lambda, const TolerancePolicy& tol);

}  // namespace interlace
