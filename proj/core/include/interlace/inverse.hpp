#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "interlace/types.hpp"

namespace interlace {

enum class SolveMethod { closed_form, continuation };

/// Predictor-corrector controls for the continuation solvers.
struct ContinuationOptions {
  int max_steps = 500;
  double newton_tol = 1e-13;  // corrector residual, relative to problem scale
  int newton_max_iter = 20;
  double initial_step = 0.25;
  double min_step = 1e-6;
  /// Interior seed override (reduced orthant coordinates; bordered solves
  /// append c). Used by multi-start uniqueness checks.
  std::optional<std::vector<double>> seed;

  void validate() const;
};

/// Post-solve evidence: the solution was reassembled and re-diagonalized.
struct SolveCertificate {
  double residual_spectrum = 0.0;  // max |sigma_o(reassembled) - mu|
  double residual_trace = 0.0;
  bool interlacing_ok = false;
  bool accepting = false;
  SolveMethod method = SolveMethod::closed_form;
  double scale = 1.0;  // spread the residual threshold was scaled by
};

/// Unique orthant preimage of mu under the rank-one map, by secular-polynomial
/// inversion: p_i^2 = prod_j (mu_j - lambda_i) / prod_{j != i} (lambda_j -
/// lambda_i). Exact zeros at face contacts. The result is certified against
/// the dense eigensolver before being returned.
OrthantVector invert_rank_one_closed(const OrderedSpectrum& lambda, const OrderedSpectrum& mu,
                                     std::optional<TolerancePolicy> tol = std::nullopt);

/// Bordered counterpart: c = sum(mu) - sum(lambda) and v_i^2 =
/// -prod_j (mu_j - lambda_i) / prod_{k != i} (lambda_k - lambda_i).
BorderedProblem invert_bordered_closed(const OrderedSpectrum& lambda, const OrderedSpectrum& mu,
                                       std::optional<TolerancePolicy> tol = std::nullopt);

/// Homotopy continuation from an interior seed toward mu, Newton-corrected
/// with the analytic Jacobian. Face-contact coordinates are deflated to zero
/// first and the reduced interior problem is continued.
std::pair<OrthantVector, SolveCertificate> invert_rank_one_continuation(
    const OrderedSpectrum& lambda, const OrderedSpectrum& mu,
    const ContinuationOptions& opts = {}, std::optional<TolerancePolicy> tol = std::nullopt);

std::pair<BorderedProblem, SolveCertificate> invert_bordered_continuation(
    const OrderedSpectrum& lambda, const OrderedSpectrum& mu,
    const ContinuationOptions& opts = {}, std::optional<TolerancePolicy> tol = std::nullopt);

/// Reassemble the perturbed matrix from a proposed solution, re-diagonalize,
/// and fill residuals. `c` is required in bordered mode.
SolveCertificate certify(const OrderedSpectrum& lambda, const OrderedSpectrum& mu,
                         const FieldVector& v, std::optional<double> c, PerturbationMode mode,
                         SolveMethod method = SolveMethod::closed_form,
                         std::optional<TolerancePolicy> tol = std::nullopt);

}  // namespace interlace
