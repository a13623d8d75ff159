#pragma once

#include <cmath>
#include <vector>

#include "interlace/eigensolve.hpp"
#include "interlace/forward.hpp"
#include "interlace/rng.hpp"
#include "interlace/types.hpp"

namespace interlace::testing {

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

/// Strict spectrum with gaps in [0.5, 1.5] starting near the origin.
inline OrderedSpectrum random_strict_spectrum(RandomSource& rng, std::size_t n) {
  std::vector<double> values(n);
  double x = rng.uniform(-2.0, 2.0);
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = x;
    x += rng.uniform(0.5, 1.5);
  }
  return OrderedSpectrum::strict(std::move(values));
}

/// |N(0,1)| entries scaled by the spectral spread (so perturbations are
/// commensurate with the base spectrum).
inline std::vector<double> random_orthant_entries(RandomSource& rng,
                                                  const OrderedSpectrum& lambda) {
  const double scale = lambda.spread() > 0.0 ? std::sqrt(lambda.spread()) : 1.0;
  std::vector<double> v(lambda.size());
  for (double& x : v) x = std::abs(rng.normal()) * scale;
  return v;
}

inline std::vector<double> random_signed_entries(RandomSource& rng,
                                                 const OrderedSpectrum& lambda) {
  const double scale = lambda.spread() > 0.0 ? std::sqrt(lambda.spread()) : 1.0;
  std::vector<double> v(lambda.size());
  for (double& x : v) x = rng.normal() * scale;
  return v;
}

/// Independent dense route: assemble D + v (x) v and diagonalize.
inline std::vector<double> dense_rank_one_spectrum(const OrderedSpectrum& lambda,
                                                   const std::vector<double>& v) {
  return eig_hermitian(assemble_rank_one(lambda, v)).values.values();
}

inline std::vector<double> dense_arrowhead_spectrum(const OrderedSpectrum& lambda,
                                                    const std::vector<double>& v, double c) {
  return eig_hermitian(assemble_arrowhead(lambda, v, c)).values.values();
}

/// Central finite differences of the rank-one forward map, column k =
/// d(mu)/d(v_k). Step h = 1e-5 * (1 + ||v||).
inline RealMatrix fd_jacobian_rank_one(const OrderedSpectrum& lambda,
                                       const std::vector<double>& v) {
  const std::size_t n = v.size();
  double norm = 0.0;
  for (double x : v) norm += x * x;
  const double h = 1e-5 * (1.0 + std::sqrt(norm));
  RealMatrix j(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> hi = v, lo = v;
    hi[k] += h;
    lo[k] -= h;
    const auto mu_hi = forward_rank_one(lambda, FieldVector::make_real(hi)).values();
    const auto mu_lo = forward_rank_one(lambda, FieldVector::make_real(lo)).values();
    for (std::size_t i = 0; i < n; ++i) j(i, k) = (mu_hi[i] - mu_lo[i]) / (2.0 * h);
  }
  return j;
}

/// Same for the bordered map over (v, c).
inline RealMatrix fd_jacobian_bordered(const OrderedSpectrum& lambda,
                                       const std::vector<double>& v, double c) {
  const std::size_t n = v.size();
  double norm = c * c;
  for (double x : v) norm += x * x;
  const double h = 1e-5 * (1.0 + std::sqrt(norm));
  RealMatrix j(n + 1, n + 1);
  for (std::size_t k = 0; k < n + 1; ++k) {
    std::vector<double> hi = v, lo = v;
    double c_hi = c, c_lo = c;
    if (k < n) {
      hi[k] += h;
      lo[k] -= h;
    } else {
      c_hi += h;
      c_lo -= h;
    }
    const auto mu_hi =
        forward_bordered({lambda, FieldVector::make_real(hi), c_hi}).values();
    const auto mu_lo =
        forward_bordered({lambda, FieldVector::make_real(lo), c_lo}).values();
    for (std::size_t i = 0; i < n + 1; ++i) j(i, k) = (mu_hi[i] - mu_lo[i]) / (2.0 * h);
  }
  return j;
}

inline double relative_matrix_error(const RealMatrix& a, const RealMatrix& b) {
  double diff = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      diff = std::max(diff, std::abs(a(i, j) - b(i, j)));
      ref = std::max(ref, std::abs(b(i, j)));
    }
  return ref > 0.0 ? diff / ref : diff;
}

}  // namespace interlace::testing
