#include "interlace/types.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace interlace {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::length_mismatch: return "LengthMismatch";
    case ErrorCode::degenerate_spectrum: return "DegenerateSpectrum";
    case ErrorCode::not_interlacing: return "NotInterlacing";
    case ErrorCode::not_in_polytope: return "NotInPolytope";
    case ErrorCode::index_out_of_range: return "IndexOutOfRange";
    case ErrorCode::not_hermitian: return "NotHermitian";
    case ErrorCode::no_convergence: return "NoConvergence";
    case ErrorCode::boundary_point: return "BoundaryPoint";
    case ErrorCode::basis_not_unitary: return "BasisNotUnitary";
    case ErrorCode::negative_weight: return "NegativeWeight";
    case ErrorCode::step_underflow: return "StepUnderflow";
    case ErrorCode::newton_divergence: return "NewtonDivergence";
    case ErrorCode::shift_not_above_spectrum: return "ShiftNotAboveSpectrum";
    case ErrorCode::frozen_mismatch: return "FrozenMismatch";
    case ErrorCode::certificate_rejected: return "CertificateRejected";
  }
  return "UnknownError";
}

OrderedSpectrum::OrderedSpectrum(std::vector<double> values, Strictness s)
    : values_(std::move(values)), strictness_(s) {}

OrderedSpectrum OrderedSpectrum::strict(std::vector<double> values) {
  if (values.empty()) fail(ErrorCode::invalid_argument, "spectrum must be nonempty");
  for (double x : values)
    if (!std::isfinite(x)) fail(ErrorCode::invalid_argument, "spectrum entries must be finite");
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (values[i] == values[i + 1]) {
      std::ostringstream os;
      os << "DegenerateSpectrum: lambda[" << i << "] == lambda[" << i + 1 << "]";
      fail(ErrorCode::degenerate_spectrum, os.str());
    }
    if (values[i] > values[i + 1]) {
      std::ostringstream os;
      os << "spectrum not ascending at index " << i;
      fail(ErrorCode::invalid_argument, os.str());
    }
  }
  return OrderedSpectrum(std::move(values), Strictness::strict);
}

OrderedSpectrum OrderedSpectrum::weak(std::vector<double> values) {
  if (values.empty()) fail(ErrorCode::invalid_argument, "spectrum must be nonempty");
  for (double x : values)
    if (!std::isfinite(x)) fail(ErrorCode::invalid_argument, "spectrum entries must be finite");
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    if (values[i] > values[i + 1]) {
      std::ostringstream os;
      os << "spectrum not ascending at index " << i;
      fail(ErrorCode::invalid_argument, os.str());
    }
  return OrderedSpectrum(std::move(values), Strictness::weak);
}

double OrderedSpectrum::sum() const {
  double s = 0.0;
  for (double x : values_) s += x;
  return s;
}

double OrderedSpectrum::sum_squares() const {
  double s = 0.0;
  for (double x : values_) s += x * x;
  return s;
}

double OrderedSpectrum::min_gap() const {
  if (values_.size() < 2) return std::numeric_limits<double>::infinity();
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < values_.size(); ++i)
    g = std::min(g, values_[i + 1] - values_[i]);
  return g;
}

FieldVector FieldVector::make_real(std::vector<double> entries) {
  std::vector<std::complex<double>> c(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!std::isfinite(entries[i]))
      fail(ErrorCode::invalid_argument, "vector entries must be finite");
    c[i] = std::complex<double>(entries[i], 0.0);
  }
  return FieldVector(std::move(c), Field::real);
}

FieldVector FieldVector::make_complex(std::vector<std::complex<double>> entries) {
  for (const auto& z : entries)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      fail(ErrorCode::invalid_argument, "vector entries must be finite");
  return FieldVector(std::move(entries), Field::complex);
}

std::vector<double> FieldVector::real_entries() const {
  if (field_ != Field::real)
    fail(ErrorCode::invalid_argument, "real coordinates requested from a complex vector");
  std::vector<double> r(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) r[i] = entries_[i].real();
  return r;
}

std::vector<double> FieldVector::magnitudes() const {
  std::vector<double> r(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) r[i] = std::abs(entries_[i]);
  return r;
}

std::vector<double> FieldVector::squared_magnitudes() const {
  std::vector<double> r(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) r[i] = std::norm(entries_[i]);
  return r;
}

double FieldVector::norm_squared() const {
  double s = 0.0;
  for (const auto& z : entries_) s += std::norm(z);
  return s;
}

OrthantVector OrthantVector::coords(std::vector<double> p) {
  for (double x : p) {
    if (!std::isfinite(x)) fail(ErrorCode::invalid_argument, "orthant entries must be finite");
    if (x < 0.0) fail(ErrorCode::invalid_argument, "orthant entries must be nonnegative");
  }
  OrthantVector v;
  v.p_ = std::move(p);
  return v;
}

OrthantVector OrthantVector::in_basis(std::vector<double> p, ComplexMatrix q, double tol_orth) {
  OrthantVector v = coords(std::move(p));
  if (q.rows() != v.size() || q.cols() != v.size())
    fail(ErrorCode::length_mismatch, "basis shape does not match vector length");
  if (unitary_defect(q) > tol_orth)
    fail(ErrorCode::basis_not_unitary, "BasisNotUnitary: columns are not orthonormal");
  v.basis_ = std::move(q);
  return v;
}

double OrthantVector::norm_squared() const {
  double s = 0.0;
  for (double x : p_) s += x * x;
  return s;
}

FieldVector OrthantVector::to_field_vector() const {
  if (!basis_) return FieldVector::make_real(p_);
  const ComplexMatrix& q = *basis_;
  std::vector<std::complex<double>> out(p_.size());
  bool any_imag = false;
  for (std::size_t i = 0; i < p_.size(); ++i) {
    std::complex<double> s = 0.0;
    for (std::size_t j = 0; j < p_.size(); ++j) s += q(i, j) * p_[j];
    out[i] = s;
    any_imag = any_imag || s.imag() != 0.0;
  }
  if (!any_imag) {
    std::vector<double> re(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) re[i] = out[i].real();
    return FieldVector::make_real(std::move(re));
  }
  return FieldVector::make_complex(std::move(out));
}

void validate(const BorderedProblem& problem) {
  if (problem.lambda.strictness() != Strictness::strict)
    fail(ErrorCode::invalid_argument, "bordered problem requires a strict base spectrum");
  if (problem.v.size() != problem.lambda.size())
    fail(ErrorCode::length_mismatch, "bordered problem: v length != lambda length");
  if (!std::isfinite(problem.c))
    fail(ErrorCode::invalid_argument, "border scalar must be finite");
}

TolerancePolicy TolerancePolicy::for_spectrum(const OrderedSpectrum& lambda) {
  TolerancePolicy tol;
  tol.tol_face = 1e-9 * (lambda.spread() + 1.0);
  return tol;
}

void TolerancePolicy::validate() const {
  if (!(tol_gap > 0.0) || !(tol_face > 0.0) || !(tol_res > 0.0) || !(tol_orth > 0.0))
    fail(ErrorCode::invalid_argument, "tolerances must be positive");
}

TolerancePolicy resolve_policy(const std::optional<TolerancePolicy>& tol,
                               const OrderedSpectrum& lambda) {
  TolerancePolicy policy = tol ? *tol : TolerancePolicy::for_spectrum(lambda);
  policy.validate();
  return policy;
}

double problem_scale(const OrderedSpectrum& lambda, const OrderedSpectrum& mu) {
  const double hi = std::max(lambda.max(), mu.max());
  const double lo = std::min(lambda.min(), mu.min());
  const double spread = hi - lo;
  return spread > 0.0 ? spread : 1.0;
}

void require_simple(const OrderedSpectrum& lambda, const TolerancePolicy& tol) {
  if (lambda.strictness() != Strictness::strict)
    fail(ErrorCode::invalid_argument, "base spectrum must be strict");
  if (lambda.size() < 2) return;
  if (lambda.min_gap() < tol.tol_gap * lambda.spread())
    fail(ErrorCode::degenerate_spectrum,
         "DegenerateSpectrum: base eigenvalue gap below tol_gap * spread");
}

}  // namespace interlace
