#include "interlace/preimage.hpp"

#include <cmath>
#include <complex>

#include "interlace/interlacing.hpp"
#include "interlace/inverse.hpp"

namespace interlace {

namespace {

struct OrthantSolution {
  std::vector<double> p;
  std::optional<double> c;
  std::vector<std::size_t> nonzero;  // ascending coordinate indices
  std::size_t k = 0;
};

// Orthant representative with face-contact coordinates pinned to exact zero,
// so the enumeration count matches the face classification.
OrthantSolution solve_orthant(const OrderedSpectrum& lambda, const OrderedSpectrum& mu,
                              PerturbationMode mode, const TolerancePolicy& policy) {
  OrthantSolution sol;
  if (auto v = find_interlacing_violation(lambda, mu, mode, policy.tol_face))
    fail(ErrorCode::not_interlacing, "NotInterlacing: " + describe(*v));
  const FaceProfile profile = classify_faces(lambda, mu, mode, policy);
  sol.k = profile.k;
  if (mode == PerturbationMode::rank_one) {
    sol.p = invert_rank_one_closed(lambda, mu, policy).p();
  } else {
    BorderedProblem solved = invert_bordered_closed(lambda, mu, policy);
    sol.p = solved.v.magnitudes();
    sol.c = solved.c;
  }
  for (std::size_t b : profile.base_indices) sol.p[b] = 0.0;
  for (std::size_t i = 0; i < sol.p.size(); ++i)
    if (!profile.base_indices.contains(i)) sol.nonzero.push_back(i);
  return sol;
}

}  // namespace

RealPreimages enumerate_real_preimages(const OrderedSpectrum& lambda, const OrderedSpectrum& mu,
                                       PerturbationMode mode,
                                       std::optional<TolerancePolicy> tol) {
  const TolerancePolicy policy = resolve_policy(tol, lambda);
  const OrthantSolution sol = solve_orthant(lambda, mu, mode, policy);
  const std::size_t m = sol.nonzero.size();
  if (m > 26)
    fail(ErrorCode::invalid_argument, "preimage enumeration limited to 2^26 vectors");

  RealPreimages out;
  out.magnitude = OrthantVector::coords(sol.p);
  out.c = sol.c;
  out.k = sol.k;
  const std::uint64_t count = std::uint64_t{1} << m;
  out.patterns.reserve(count);
  out.vectors.reserve(count);

  for (std::uint64_t mask = 0; mask < count; ++mask) {
    SignPattern pattern;
    pattern.signs.assign(sol.p.size(), 0);
    std::vector<double> entries(sol.p.size(), 0.0);
    for (std::size_t b = 0; b < m; ++b) {
      // Bit order: first nonzero coordinate is the most significant bit,
      // 0 -> +1, 1 -> -1, so patterns come out lexicographic with +1 first.
      const bool negative = (mask >> (m - 1 - b)) & 1;
      const std::size_t coord = sol.nonzero[b];
      pattern.signs[coord] = negative ? -1 : 1;
      entries[coord] = negative ? -sol.p[coord] : sol.p[coord];
    }
    out.patterns.push_back(std::move(pattern));
    out.vectors.push_back(FieldVector::make_real(std::move(entries)));
  }
  return out;
}

FieldVector sample_complex_preimage(const OrderedSpectrum& lambda, const OrderedSpectrum& mu,
                                    const PhaseAssignment& phases, PerturbationMode mode,
                                    std::optional<TolerancePolicy> tol) {
  const TolerancePolicy policy = resolve_policy(tol, lambda);
  const OrthantSolution sol = solve_orthant(lambda, mu, mode, policy);
  if (phases.thetas.size() != sol.p.size())
    fail(ErrorCode::length_mismatch, "phase assignment length != n");

  std::vector<std::complex<double>> entries(sol.p.size());
  for (std::size_t i = 0; i < sol.p.size(); ++i) {
    if (sol.p[i] == 0.0) {
      if (phases.thetas[i].has_value())
        fail(ErrorCode::frozen_mismatch,
             "FrozenMismatch: phase supplied at a zero coordinate");
      entries[i] = 0.0;
      continue;
    }
    const double theta = phases.thetas[i].value_or(0.0);
    entries[i] = std::polar(sol.p[i], theta);
  }
  return FieldVector::make_complex(std::move(entries));
}

PreimageCount preimage_count(const OrderedSpectrum& lambda, const OrderedSpectrum& mu,
                             Field field, PerturbationMode mode,
                             std::optional<TolerancePolicy> tol) {
  const TolerancePolicy policy = resolve_policy(tol, lambda);
  if (auto v = find_interlacing_violation(
          lambda, mu, mode, policy.tol_face))
    fail(ErrorCode::not_interlacing, "NotInterlacing: " + describe(*v));
  const FaceProfile profile = classify_faces(lambda, mu, mode, policy);

  PreimageCount out;
  out.field = field;
  out.k = profile.k;
  const std::size_t free_coords = lambda.size() - profile.k;
  out.torus_dimension = free_coords;
  if (field == Field::real) {
    if (free_coords > 62) fail(ErrorCode::invalid_argument, "preimage count overflows");
    out.real_count = std::uint64_t{1} << free_coords;
  } else {
    out.real_count = 0;
  }
  if (mode == PerturbationMode::rank_one) {
    out.r_squared = mu.sum() - lambda.sum();
  } else {
    const double c = mu.sum() - lambda.sum();
    out.r_squared = 0.5 * (mu.sum_squares() - lambda.sum_squares() - c * c);
  }
  return out;
}

}  // namespace interlace
