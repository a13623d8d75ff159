#pragma once

#include <optional>
#include <vector>

#include "interlace/eigensolve.hpp"
#include "interlace/matrix.hpp"
#include "interlace/types.hpp"

namespace interlace {

/// Ordered spectrum of D + v (x) v*, computed through the secular equation
/// with weights |v_i|^2. The base spectrum must be strict and simple.
OrderedSpectrum forward_rank_one(const OrderedSpectrum& lambda, const FieldVector& v,
                                 std::optional<TolerancePolicy> tol = std::nullopt);

/// Ordered spectrum of the arrowhead [[D, v], [v*, c]].
OrderedSpectrum forward_bordered(const BorderedProblem& problem,
                                 std::optional<TolerancePolicy> tol = std::nullopt);

/// Coordinate magnitudes |Q* v| in the given eigenbasis (identity when
/// absent). Throws BasisNotUnitary.
OrthantVector abs_map(const FieldVector& v,
                      const std::optional<ComplexMatrix>& basis = std::nullopt,
                      std::optional<TolerancePolicy> tol = std::nullopt);

/// Derivative of the ordered spectrum with respect to the perturbation
/// parameters, evaluated at an interior point.
struct JacobianMatrix {
  RealMatrix entries;              // row i = gradient of mu_i
  std::vector<double> base_point;  // v, or (v, c) for the bordered map
};

/// Direction (vdot, cdot) in parameter space.
struct PerturbationDirection {
  std::vector<double> vdot;
  std::optional<double> cdot;
};

/// vdot (x) v + v (x) vdot.
RealMatrix direction_matrix_rank_one(const std::vector<double>& v,
                                     const PerturbationDirection& dir);
/// [[0, vdot], [vdot^T, cdot]].
RealMatrix direction_matrix_bordered(std::size_t n, const PerturbationDirection& dir);

/// Analytic Jacobian of the rank-one map at real interior v: row i equals
/// 2 <w_i, v> w_i^T for eigenvectors w_i of D + v (x) v. Throws BoundaryPoint
/// when some |v_i| <= tol_face, DegenerateSpectrum when the image spectrum has
/// a gap below tol_gap.
JacobianMatrix jacobian_F(const OrderedSpectrum& lambda, const std::vector<double>& v,
                          std::optional<TolerancePolicy> tol = std::nullopt);
JacobianMatrix jacobian_F(const OrderedSpectrum& lambda, const FieldVector& v,
                          std::optional<TolerancePolicy> tol = std::nullopt);

/// Analytic Jacobian of the bordered map at a real interior (v, c): row j is
/// (2 (w_j)_{n+1} (w_j)_{1..n}, (w_j)_{n+1}^2).
JacobianMatrix jacobian_G(const BorderedProblem& problem,
                          std::optional<TolerancePolicy> tol = std::nullopt);

/// d/dt of the j-th eigenvalue of T + t Tdot at t = 0: <Tdot w_j, w_j>.
/// Requires the eigenvalue to be simple. Indices are 0-based.
double eigenvalue_derivative(const RealMatrix& t, const RealMatrix& tdot, std::size_t j,
                             std::optional<TolerancePolicy> tol = std::nullopt);

/// Second derivative at t = 0 of the j-th ordered eigenvalue of the bordered
/// matrix diag(D, c) + t * (all-ones border), for c above the spectrum:
/// -2 / (c - lambda_j) for j < n, and -2 <1, (D - c)^{-1} 1> for j = n.
double eigenvalue_second_derivative_bordered(const OrderedSpectrum& lambda, double c,
                                             std::size_t j,
                                             std::optional<TolerancePolicy> tol = std::nullopt);

/// Residuals of the restriction-slice identities tying image sums to the
/// perturbation data.
struct SliceReport {
  PerturbationMode mode = PerturbationMode::rank_one;
  OrderedSpectrum mu = OrderedSpectrum::weak({0.0});
  double residual_trace = 0.0;  // sum(mu) - sum(lambda) - ||v||^2, or - c
  std::optional<double> residual_trace_squares;  // bordered only
  double scale = 1.0;

  bool within(double tol_res) const;
};

SliceReport check_slice_identities(const OrderedSpectrum& lambda, const FieldVector& v,
                                   std::optional<double> c, PerturbationMode mode,
                                   std::optional<TolerancePolicy> tol = std::nullopt);

}  // namespace interlace
