#include "interlace/forward.hpp"

#include <cmath>
#include <sstream>

#include "interlace/secular.hpp"

namespace interlace {

OrderedSpectrum forward_rank_one(const OrderedSpectrum& lambda, const FieldVector& v,
                                 std::optional<TolerancePolicy> tol) {
  const TolerancePolicy policy = resolve_policy(tol, lambda);
  require_simple(lambda, policy);
  if (v.size() != lambda.size())
    fail(ErrorCode::length_mismatch, "forward_rank_one: v length != lambda length");
  return secular_roots_rank_one({lambda, v.squared_magnitudes(), std::nullopt});
}

OrderedSpectrum forward_bordered(const BorderedProblem& problem,
                                 std::optional<TolerancePolicy> tol) {
  validate(problem);
  const TolerancePolicy policy = resolve_policy(tol, problem.lambda);
  require_simple(problem.lambda, policy);
  return secular_roots_arrowhead({problem.lambda, problem.v.squared_magnitudes(), problem.c});
}

OrthantVector abs_map(const FieldVector& v, const std::optional<ComplexMatrix>& basis,
                      std::optional<TolerancePolicy> tol) {
  const TolerancePolicy policy = tol.value_or(TolerancePolicy{});
  policy.validate();
  if (!basis) return OrthantVector::coords(v.magnitudes());
  const ComplexMatrix& q = *basis;
  if (q.rows() != v.size() || q.cols() != v.size())
    fail(ErrorCode::length_mismatch, "abs_map: basis shape does not match vector");
  if (unitary_defect(q) > policy.tol_orth)
    fail(ErrorCode::basis_not_unitary, "BasisNotUnitary: columns are not orthonormal");
  const auto& e = v.entries();
  std::vector<double> p(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    std::complex<double> coeff = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) coeff += std::conj(q(i, j)) * e[i];
    p[j] = std::abs(coeff);
  }
  return OrthantVector::in_basis(std::move(p), q, policy.tol_orth);
}

RealMatrix direction_matrix_rank_one(const std::vector<double>& v,
                                     const PerturbationDirection& dir) {
  if (dir.vdot.size() != v.size())
    fail(ErrorCode::length_mismatch, "direction length != base point length");
  const std::size_t n = v.size();
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = dir.vdot[i] * v[j] + v[i] * dir.vdot[j];
  return m;
}

RealMatrix direction_matrix_bordered(std::size_t n, const PerturbationDirection& dir) {
  if (dir.vdot.size() != n)
    fail(ErrorCode::length_mismatch, "direction length != border length");
  RealMatrix m(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, n) = dir.vdot[i];
    m(n, i) = dir.vdot[i];
  }
  m(n, n) = dir.cdot.value_or(0.0);
  return m;
}

namespace {

void require_interior(const std::vector<double>& v, double tol_face) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) <= tol_face) {
      std::ostringstream os;
      os << "BoundaryPoint: |v[" << i << "]| <= tol_face";
      fail(ErrorCode::boundary_point, os.str());
    }
}

void require_simple_image(const OrderedSpectrum& values, double tol_gap) {
  const double scale = values.spread() > 0.0 ? values.spread() : 1.0;
  if (values.min_gap() < tol_gap * scale)
    fail(ErrorCode::degenerate_spectrum,
         "DegenerateSpectrum: image eigenvalue gap below tol_gap");
}

}  // namespace

JacobianMatrix jacobian_F(const OrderedSpectrum& lambda, const std::vector<double>& v,
                          std::optional<TolerancePolicy> tol) {
  const TolerancePolicy policy = resolve_policy(tol, lambda);
  require_simple(lambda, policy);
  if (v.size() != lambda.size())
    fail(ErrorCode::length_mismatch, "jacobian_F: v length != lambda length");
  require_interior(v, policy.tol_face);

  const EigenDecomposition dec = eig_hermitian(assemble_rank_one(lambda, v));
  require_simple_image(dec.values, policy.tol_gap);

  const std::size_t n = v.size();
  RealMatrix j(n, n);
  for (std::size_t row = 0; row < n; ++row) {
    double wv = 0.0;
    for (std::size_t i = 0; i < n; ++i) wv += dec.vectors(i, row) * v[i];
    for (std::size_t col = 0; col < n; ++col)
      j(row, col) = 2.0 * wv * dec.vectors(col, row);
  }
  return {std::move(j), v};
}

JacobianMatrix jacobian_F(const OrderedSpectrum& lambda, const FieldVector& v,
                          std::optional<TolerancePolicy> tol) {
  if (v.field() != Field::real)
    fail(ErrorCode::invalid_argument, "jacobian_F is defined for real parameter vectors");
  return jacobian_F(lambda, v.real_entries(), tol);
}

JacobianMatrix jacobian_G(const BorderedProblem& problem, std::optional<TolerancePolicy> tol) {
  validate(problem);
  if (problem.v.field() != Field::real)
    fail(ErrorCode::invalid_argument, "jacobian_G is defined for real parameter vectors");
  const TolerancePolicy policy = resolve_policy(tol, problem.lambda);
  require_simple(problem.lambda, policy);
  const std::vector<double> v = problem.v.real_entries();
  require_interior(v, policy.tol_face);

  const EigenDecomposition dec =
      eig_hermitian(assemble_arrowhead(problem.lambda, v, problem.c));
  require_simple_image(dec.values, policy.tol_gap);

  const std::size_t n = v.size();
  RealMatrix j(n + 1, n + 1);
  for (std::size_t row = 0; row < n + 1; ++row) {
    const double w_last = dec.vectors(n, row);
    for (std::size_t col = 0; col < n; ++col)
      j(row, col) = 2.0 * w_last * dec.vectors(col, row);
    j(row, n) = w_last * w_last;
  }
  std::vector<double> base = v;
  base.push_back(problem.c);
  return {std::move(j), std::move(base)};
}

double eigenvalue_derivative(const RealMatrix& t, const RealMatrix& tdot, std::size_t j,
                             std::optional<TolerancePolicy> tol) {
  TolerancePolicy policy = tol.value_or(TolerancePolicy{});
  policy.validate();
  if (!t.square() || !tdot.square() || t.rows() != tdot.rows())
    fail(ErrorCode::length_mismatch, "eigenvalue_derivative: shape mismatch");
  const std::size_t n = t.rows();
  if (j >= n) fail(ErrorCode::index_out_of_range, "eigenvalue index out of range");

  const EigenDecomposition dec = eig_hermitian(t);
  const auto& vals = dec.values.values();
  const double scale = dec.values.spread() > 0.0 ? dec.values.spread() : 1.0;
  double gap = std::numeric_limits<double>::infinity();
  if (j > 0) gap = std::min(gap, vals[j] - vals[j - 1]);
  if (j + 1 < n) gap = std::min(gap, vals[j + 1] - vals[j]);
  if (gap < policy.tol_gap * scale)
    fail(ErrorCode::degenerate_spectrum,
         "DegenerateSpectrum: eigenvalue is not simple to tol_gap");

  const std::vector<double> w = dec.vectors.column(j);
  double s = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    double row = 0.0;
    for (std::size_t b = 0; b < n; ++b) row += tdot(a, b) * w[b];
    s += w[a] * row;
  }
  return s;
}

double eigenvalue_second_derivative_bordered(const OrderedSpectrum& lambda, double c,
                                             std::size_t j,
                                             std::optional<TolerancePolicy> tol) {
  const TolerancePolicy policy = resolve_policy(tol, lambda);
  require_simple(lambda, policy);
  const std::size_t n = lambda.size();
  if (j > n) fail(ErrorCode::index_out_of_range, "eigenvalue index out of range");
  const double scale = lambda.spread() > 0.0 ? lambda.spread() : 1.0;
  if (!(c - lambda.max() > policy.tol_gap * scale))
    fail(ErrorCode::shift_not_above_spectrum,
         "ShiftNotAboveSpectrum: c must exceed the top base eigenvalue");

  if (j < n) return -2.0 / (c - lambda[j]);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += 1.0 / (lambda[i] - c);
  return -2.0 * s;
}

bool SliceReport::within(double tol_res) const {
  const double bound = tol_res * scale;
  if (std::abs(residual_trace) > bound) return false;
  if (residual_trace_squares && std::abs(*residual_trace_squares) > bound) return false;
  return true;
}

SliceReport check_slice_identities(const OrderedSpectrum& lambda, const FieldVector& v,
                                   std::optional<double> c, PerturbationMode mode,
                                   std::optional<TolerancePolicy> tol) {
  SliceReport report;
  report.mode = mode;
  if (mode == PerturbationMode::rank_one) {
    report.mu = forward_rank_one(lambda, v, tol);
    report.residual_trace = report.mu.sum() - lambda.sum() - v.norm_squared();
  } else {
    if (!c) fail(ErrorCode::invalid_argument, "bordered slice check requires c");
    BorderedProblem problem{lambda, v, *c};
    report.mu = forward_bordered(problem, tol);
    report.residual_trace = report.mu.sum() - lambda.sum() - *c;
    report.residual_trace_squares = report.mu.sum_squares() - lambda.sum_squares() -
                                    2.0 * v.norm_squared() - (*c) * (*c);
  }
  report.scale = problem_scale(lambda, report.mu);
  return report;
}

}  // namespace interlace
