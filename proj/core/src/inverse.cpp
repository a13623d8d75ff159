#include "interlace/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "interlace/eigensolve.hpp"
#include "interlace/forward.hpp"
#include "interlace/interlacing.hpp"
#include "interlace/secular.hpp"

namespace interlace {

void ContinuationOptions::validate() const {
  if (max_steps < 1) fail(ErrorCode::invalid_argument, "max_steps must be >= 1");
  if (!(newton_tol > 0.0)) fail(ErrorCode::invalid_argument, "newton_tol must be > 0");
  if (newton_max_iter < 1) fail(ErrorCode::invalid_argument, "newton_max_iter must be >= 1");
  if (!(min_step > 0.0) || !(min_step <= initial_step) || !(initial_step <= 1.0))
    fail(ErrorCode::invalid_argument, "need 0 < min_step <= initial_step <= 1");
}

namespace {

// Product accumulator with a separate binary exponent, so long radicand
// products cannot overflow or underflow.
class ScaledProduct {
 public:
  void multiply(double x) {
    mant_ *= x;
    int e = 0;
    mant_ = std::frexp(mant_, &e);
    exp_ += e;
  }
  double over(const ScaledProduct& d) const {
    return std::ldexp(mant_ / d.mant_, static_cast<int>(exp_ - d.exp_));
  }

 private:
  double mant_ = 1.0;
  long exp_ = 0;
};

void require_interlacing(const OrderedSpectrum& lambda, const OrderedSpectrum& mu,
                         PerturbationMode mode, double slack) {
  if (auto v = find_interlacing_violation(lambda, mu, mode, slack))
    fail(ErrorCode::not_interlacing, "NotInterlacing: " + describe(*v));
}

// Squared closed-form weights: sign s * prod_j (mu_j - lambda_i) /
// prod_{k != i} (lambda_k - lambda_i), with exact zeros preserved and small
// negative radicands (round-off at faces) clamped to zero.
std::vector<double> closed_form_squares(const OrderedSpectrum& lambda,
                                        const OrderedSpectrum& mu, double sign,
                                        double clamp) {
  const auto& l = lambda.values();
  const auto& m = mu.values();
  const std::size_t n = l.size();
  std::vector<double> squares(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    bool exact_zero = false;
    ScaledProduct num;
    for (double mj : m) {
      const double t = mj - l[i];
      if (t == 0.0) {
        exact_zero = true;
        break;
      }
      num.multiply(t);
    }
    if (exact_zero) continue;
    ScaledProduct den;
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) den.multiply(l[k] - l[i]);
    const double rad = sign * num.over(den);
    if (rad < -clamp) {
      std::ostringstream os;
      os << "NegativeWeight: radicand " << rad << " at coordinate " << i;
      fail(ErrorCode::negative_weight, os.str());
    }
    squares[i] = rad > 0.0 ? rad : 0.0;
  }
  return squares;
}

struct Deflation {
  std::vector<std::size_t> kept_base;
  std::vector<std::size_t> kept_mu;
};

// Freeze face-contact coordinates at zero: drop each touched base eigenvalue
// together with the one mu coordinate that attains it.
Deflation deflate_contacts(const OrderedSpectrum& lambda, const OrderedSpectrum& mu,
                           PerturbationMode mode, const TolerancePolicy& policy) {
  const FaceProfile profile = classify_faces(lambda, mu, mode, policy);
  const auto& l = lambda.values();
  const auto& m = mu.values();
  std::vector<char> mu_removed(m.size(), 0);
  std::vector<char> base_removed(l.size(), 0);

  for (std::size_t b : profile.base_indices) {
    std::vector<std::size_t> candidates;
    if (mode == PerturbationMode::rank_one) {
      candidates.push_back(b);
      if (b >= 1) candidates.push_back(b - 1);
    } else {
      candidates.push_back(b);
      candidates.push_back(b + 1);
    }
    std::size_t best = std::numeric_limits<std::size_t>::max();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t cand : candidates) {
      if (cand >= m.size() || mu_removed[cand]) continue;
      const double dist = std::abs(m[cand] - l[b]);
      if (dist <= policy.tol_face && dist < best_dist) {
        best = cand;
        best_dist = dist;
      }
    }
    if (best == std::numeric_limits<std::size_t>::max())
      fail(ErrorCode::degenerate_spectrum,
           "face deflation failed: contacts closer than the base eigenvalue gaps");
    mu_removed[best] = 1;
    base_removed[b] = 1;
  }

  Deflation d;
  for (std::size_t i = 0; i < l.size(); ++i)
    if (!base_removed[i]) d.kept_base.push_back(i);
  for (std::size_t i = 0; i < m.size(); ++i)
    if (!mu_removed[i]) d.kept_mu.push_back(i);
  return d;
}

struct ContinuationCallbacks {
  std::function<std::vector<double>(const std::vector<double>&)> image;
  std::function<RealMatrix(const std::vector<double>&)> jacobian;
  std::vector<char> positive;
};

std::vector<double> run_continuation(const ContinuationCallbacks& cb, std::vector<double> x,
                                     const std::vector<double>& target,
                                     const ContinuationOptions& opts, double scale) {
  const std::vector<double> start_image = cb.image(x);
  const double res_tol = opts.newton_tol * scale;
  double t = 0.0;
  double dt = opts.initial_step;
  int steps = 0;

  while (t < 1.0) {
    if (++steps > opts.max_steps)
      fail(ErrorCode::no_convergence, "continuation step budget exhausted");
    const double tn = std::min(1.0, t + dt);
    std::vector<double> goal(target.size());
    for (std::size_t i = 0; i < target.size(); ++i)
      goal[i] = (1.0 - tn) * start_image[i] + tn * target[i];

    std::vector<double> xc = x;
    bool converged = false;
    int newton_updates = 0;
    try {
      for (int iter = 0; iter <= opts.newton_max_iter; ++iter) {
        const std::vector<double> img = cb.image(xc);
        double residual = 0.0;
        for (std::size_t i = 0; i < img.size(); ++i)
          residual = std::max(residual, std::abs(goal[i] - img[i]));
        if (!std::isfinite(residual))
          fail(ErrorCode::newton_divergence, "NewtonDivergence: corrector residual not finite");
        if (residual <= res_tol) {
          converged = true;
          newton_updates = iter;
          break;
        }
        if (iter == opts.newton_max_iter) break;
        RealMatrix jac = cb.jacobian(xc);
        std::vector<double> rhs(img.size());
        for (std::size_t i = 0; i < img.size(); ++i) rhs[i] = goal[i] - img[i];
        const std::vector<double> delta = solve_linear(std::move(jac), std::move(rhs));

        double damp = 1.0;
        bool feasible = false;
        for (int tries = 0; tries < 8 && !feasible; ++tries) {
          feasible = true;
          for (std::size_t i = 0; i < xc.size(); ++i)
            if (cb.positive[i] && xc[i] + damp * delta[i] <= 0.0) {
              feasible = false;
              break;
            }
          if (!feasible) damp *= 0.5;
        }
        if (!feasible) break;
        for (std::size_t i = 0; i < xc.size(); ++i) xc[i] += damp * delta[i];
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::newton_divergence) throw;
      converged = false;  // eig/solve trouble inside the corrector: shrink the step
    }

    if (converged) {
      x = std::move(xc);
      t = tn;
      if (newton_updates <= 3) dt = std::min(2.0 * dt, 1.0);
    } else {
      dt *= 0.5;
      if (dt < opts.min_step)
        fail(ErrorCode::step_underflow, "StepUnderflow: continuation step below min_step");
    }
  }
  return x;
}

std::vector<double> subset(const std::vector<double>& v, const std::vector<std::size_t>& idx) {
  std::vector<double> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(v[i]);
  return out;
}

std::vector<double> resolve_seed(const ContinuationOptions& opts, std::size_t dim,
                                 std::size_t n_positive, double fallback_coord,
                                 std::optional<double> trailing) {
  if (opts.seed) {
    const std::vector<double>& s = *opts.seed;
    if (s.size() != dim)
      fail(ErrorCode::length_mismatch, "continuation seed length mismatch");
    for (std::size_t i = 0; i < n_positive; ++i)
      if (!(s[i] > 0.0))
        fail(ErrorCode::invalid_argument, "continuation seed must be strictly interior");
    return s;
  }
  std::vector<double> s(dim, fallback_coord);
  if (trailing) s[dim - 1] = *trailing;
  return s;
}

}  // namespace

OrthantVector invert_rank_one_closed(const OrderedSpectrum& lambda, const OrderedSpectrum& mu,
                                     std::optional<TolerancePolicy> tol) {
  const TolerancePolicy policy = resolve_policy(tol, lambda);
  require_simple(lambda, policy);
  require_interlacing(lambda, mu, PerturbationMode::rank_one, policy.tol_face);

  std::vector<double> squares = closed_form_squares(lambda, mu, 1.0, policy.tol_res);
  std::vector<double> p(squares.size());
  for (std::size_t i = 0; i < squares.size(); ++i) p[i] = std::sqrt(squares[i]);

  const SolveCertificate cert = certify(lambda, mu, FieldVector::make_real(p), std::nullopt,
                                        PerturbationMode::rank_one, SolveMethod::closed_form,
                                        policy);
  if (!cert.accepting)
    fail(ErrorCode::certificate_rejected,
         "closed-form rank-one solution failed certification");
  return OrthantVector::coords(std::move(p));
}

BorderedProblem invert_bordered_closed(const OrderedSpectrum& lambda, const OrderedSpectrum& mu,
                                       std::optional<TolerancePolicy> tol) {
  const TolerancePolicy policy = resolve_policy(tol, lambda);
  require_simple(lambda, policy);
  require_interlacing(lambda, mu, PerturbationMode::bordered, policy.tol_face);

  const double c = mu.sum() - lambda.sum();
  std::vector<double> squares = closed_form_squares(lambda, mu, -1.0, policy.tol_res);
  std::vector<double> v(squares.size());
  for (std::size_t i = 0; i < squares.size(); ++i) v[i] = std::sqrt(squares[i]);

  BorderedProblem solution{lambda, FieldVector::make_real(std::move(v)), c};
  const SolveCertificate cert = certify(lambda, mu, solution.v, c, PerturbationMode::bordered,
                                        SolveMethod::closed_form, policy);
  if (!cert.accepting)
    fail(ErrorCode::certificate_rejected,
         "closed-form bordered solution failed certification");
  return solution;
}

std::pair<OrthantVector, SolveCertificate> invert_rank_one_continuation(
    const OrderedSpectrum& lambda, const OrderedSpectrum& mu, const ContinuationOptions& opts,
    std::optional<TolerancePolicy> tol) {
  const TolerancePolicy policy = resolve_policy(tol, lambda);
  opts.validate();
  require_simple(lambda, policy);
  require_interlacing(lambda, mu, PerturbationMode::rank_one, policy.tol_face);

  const Deflation d = deflate_contacts(lambda, mu, PerturbationMode::rank_one, policy);
  std::vector<double> p(lambda.size(), 0.0);

  if (!d.kept_base.empty()) {
    const OrderedSpectrum reduced_lambda =
        OrderedSpectrum::strict(subset(lambda.values(), d.kept_base));
    const std::vector<double> target = subset(mu.values(), d.kept_mu);
    const double scale = problem_scale(lambda, mu);
    const std::size_t nr = d.kept_base.size();

    double r2 = 0.0;
    for (std::size_t i = 0; i < nr; ++i) r2 += target[i] - reduced_lambda[i];
    r2 = std::max(r2, 0.0);
    const double s = std::max(std::sqrt(r2 / static_cast<double>(nr)),
                              std::sqrt(policy.tol_face * scale));

    ContinuationCallbacks cb;
    cb.positive.assign(nr, 1);
    cb.image = [&reduced_lambda](const std::vector<double>& x) {
      std::vector<double> w(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) w[i] = x[i] * x[i];
      return secular_roots_rank_one({reduced_lambda, std::move(w), std::nullopt}).values();
    };
    cb.jacobian = [&reduced_lambda, &policy](const std::vector<double>& x) {
      return jacobian_F(reduced_lambda, x, policy).entries;
    };

    const std::vector<double> seed = resolve_seed(opts, nr, nr, s, std::nullopt);
    const std::vector<double> x = run_continuation(cb, seed, target, opts, scale);
    for (std::size_t i = 0; i < nr; ++i) p[d.kept_base[i]] = x[i];
  }

  SolveCertificate cert = certify(lambda, mu, FieldVector::make_real(p), std::nullopt,
                                  PerturbationMode::rank_one, SolveMethod::continuation,
                                  policy);
  return {OrthantVector::coords(std::move(p)), cert};
}

std::pair<BorderedProblem, SolveCertificate> invert_bordered_continuation(
    const OrderedSpectrum& lambda, const OrderedSpectrum& mu, const ContinuationOptions& opts,
    std::optional<TolerancePolicy> tol) {
  const TolerancePolicy policy = resolve_policy(tol, lambda);
  opts.validate();
  require_simple(lambda, policy);
  require_interlacing(lambda, mu, PerturbationMode::bordered, policy.tol_face);

  const Deflation d = deflate_contacts(lambda, mu, PerturbationMode::bordered, policy);
  std::vector<double> v(lambda.size(), 0.0);
  double c = mu.sum() - lambda.sum();

  if (!d.kept_base.empty()) {
    const OrderedSpectrum reduced_lambda =
        OrderedSpectrum::strict(subset(lambda.values(), d.kept_base));
    const std::vector<double> target = subset(mu.values(), d.kept_mu);
    const double scale = problem_scale(lambda, mu);
    const std::size_t nr = d.kept_base.size();

    double target_sum = 0.0, target_sum_sq = 0.0;
    for (double x : target) {
      target_sum += x;
      target_sum_sq += x * x;
    }
    const double c0 = target_sum - reduced_lambda.sum();
    double r2 = 0.5 * (target_sum_sq - reduced_lambda.sum_squares() - c0 * c0);
    r2 = std::max(r2, 0.0);
    const double s = std::max(std::sqrt(r2 / static_cast<double>(nr)),
                              std::sqrt(policy.tol_face * scale));

    ContinuationCallbacks cb;
    cb.positive.assign(nr + 1, 1);
    cb.positive[nr] = 0;  // the border scalar is a free sign
    cb.image = [&reduced_lambda](const std::vector<double>& x) {
      std::vector<double> w(x.size() - 1);
      for (std::size_t i = 0; i + 1 < x.size(); ++i) w[i] = x[i] * x[i];
      return secular_roots_arrowhead({reduced_lambda, std::move(w), x.back()}).values();
    };
    cb.jacobian = [&reduced_lambda, &policy](const std::vector<double>& x) {
      const std::vector<double> head(x.begin(), x.end() - 1);
      BorderedProblem pb{reduced_lambda, FieldVector::make_real(head), x.back()};
      return jacobian_G(pb, policy).entries;
    };

    const std::vector<double> seed = resolve_seed(opts, nr + 1, nr, s, c0);
    const std::vector<double> x = run_continuation(cb, seed, target, opts, scale);
    for (std::size_t i = 0; i < nr; ++i) v[d.kept_base[i]] = x[i];
    c = x.back();
  }

  BorderedProblem solution{lambda, FieldVector::make_real(std::move(v)), c};
  SolveCertificate cert = certify(lambda, mu, solution.v, c, PerturbationMode::bordered,
                                  SolveMethod::continuation, policy);
  return {std::move(solution), cert};
}

SolveCertificate certify(const OrderedSpectrum& lambda, const OrderedSpectrum& mu,
                         const FieldVector& v, std::optional<double> c, PerturbationMode mode,
                         SolveMethod method, std::optional<TolerancePolicy> tol) {
  const TolerancePolicy policy = resolve_policy(tol, lambda);
  const std::size_t n = lambda.size();
  if (v.size() != n) fail(ErrorCode::length_mismatch, "certify: v length != lambda length");
  const std::size_t expected_mu = mode == PerturbationMode::rank_one ? n : n + 1;
  if (mu.size() != expected_mu)
    fail(ErrorCode::length_mismatch, "certify: mu length does not match mode");
  if (mode == PerturbationMode::bordered && !c)
    fail(ErrorCode::invalid_argument, "certify: bordered mode requires c");

  std::vector<double> sigma;
  if (v.field() == Field::real) {
    const std::vector<double> vr = v.real_entries();
    const RealMatrix t = mode == PerturbationMode::rank_one
                             ? assemble_rank_one(lambda, vr)
                             : assemble_arrowhead(lambda, vr, *c);
    sigma = eig_hermitian(t).values.values();
  } else {
    const ComplexMatrix t = mode == PerturbationMode::rank_one
                                ? assemble_rank_one(lambda, v)
                                : assemble_arrowhead(lambda, v, *c);
    sigma = eig_hermitian(t).values.values();
  }

  SolveCertificate cert;
  cert.method = method;
  cert.scale = problem_scale(lambda, mu);
  for (std::size_t i = 0; i < sigma.size(); ++i)
    cert.residual_spectrum = std::max(cert.residual_spectrum, std::abs(sigma[i] - mu[i]));
  if (mode == PerturbationMode::rank_one)
    cert.residual_trace = std::abs(mu.sum() - lambda.sum() - v.norm_squared());
  else
    cert.residual_trace = std::abs(mu.sum() - lambda.sum() - *c);
  cert.interlacing_ok =
      !find_interlacing_violation(lambda, mu, mode, policy.tol_face).has_value();
  cert.accepting =
      cert.interlacing_ok && cert.residual_spectrum <= policy.tol_res * cert.scale;
  return cert;
}

}  // namespace interlace
