#include "interlace/interlacing.hpp"

#include <cmath>
#include <sstream>

namespace interlace {

std::string describe(const InterlacingViolation& v) {
  std::ostringstream os;
  os << "mu[" << v.mu_index << "] " << (v.mu_above ? '>' : '<') << " lambda["
     << v.lambda_index << "]";
  return os.str();
}

std::optional<InterlacingViolation> find_interlacing_violation(const OrderedSpectrum& lambda,
                                                               const OrderedSpectrum& mu,
                                                               PerturbationMode mode,
                                                               double slack) {
  const auto& l = lambda.values();
  const auto& m = mu.values();
  const std::size_t n = l.size();
  if (mode == PerturbationMode::rank_one) {
    if (m.size() != n)
      fail(ErrorCode::length_mismatch, "rank-one interlacing needs len(mu) == len(lambda)");
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i] < l[i] - slack) return InterlacingViolation{i, i, false};
      if (i + 1 < n && m[i] > l[i + 1] + slack) return InterlacingViolation{i, i + 1, true};
    }
  } else {
    if (m.size() != n + 1)
      fail(ErrorCode::length_mismatch, "bordered interlacing needs len(mu) == len(lambda) + 1");
    for (std::size_t i = 0; i < n + 1; ++i) {
      if (i >= 1 && m[i] < l[i - 1] - slack) return InterlacingViolation{i, i - 1, false};
      if (i < n && m[i] > l[i] + slack) return InterlacingViolation{i, i, true};
    }
  }
  return std::nullopt;
}

bool check_interlacing_rank_one(const OrderedSpectrum& lambda, const OrderedSpectrum& mu) {
  return !find_interlacing_violation(lambda, mu, PerturbationMode::rank_one).has_value();
}

bool check_interlacing_bordered(const OrderedSpectrum& lambda, const OrderedSpectrum& mu) {
  return !find_interlacing_violation(lambda, mu, PerturbationMode::bordered).has_value();
}

FaceProfile classify_faces(const OrderedSpectrum& lambda, const OrderedSpectrum& mu,
                           PerturbationMode mode, std::optional<TolerancePolicy> tol) {
  const TolerancePolicy policy = resolve_policy(tol, lambda);
  if (auto v = find_interlacing_violation(lambda, mu, mode, policy.tol_face))
    fail(ErrorCode::not_in_polytope, "NotInPolytope: " + describe(*v));

  const auto& l = lambda.values();
  const auto& m = mu.values();
  const std::size_t n = l.size();
  FaceProfile profile;

  const auto touch = [&](std::size_t coord, FaceKind kind, std::size_t base) {
    profile.touched.emplace(coord, kind);
    profile.base_indices.insert(base);
  };

  if (mode == PerturbationMode::rank_one) {
    // Coordinate i of mu lives in [lambda_i, lambda_{i+1}] (last ray is open).
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(m[i] - l[i]) <= policy.tol_face) touch(i, FaceKind::lower, i);
      if (i + 1 < n && std::abs(m[i] - l[i + 1]) <= policy.tol_face)
        touch(i, FaceKind::upper, i + 1);
    }
  } else {
    // Coordinate i of mu lives in [lambda_{i-1}, lambda_i]; both outer rays open.
    for (std::size_t i = 0; i < n + 1; ++i) {
      if (i >= 1 && std::abs(m[i] - l[i - 1]) <= policy.tol_face)
        touch(i, FaceKind::lower, i - 1);
      if (i < n && std::abs(m[i] - l[i]) <= policy.tol_face) touch(i, FaceKind::upper, i);
    }
  }
  profile.k = profile.base_indices.size();
  return profile;
}

bool FaceBox::contains(std::span<const double> x, double tol) const {
  if (x.size() != coords.size()) return false;
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (!coords[i].contains(x[i], tol)) return false;
  return true;
}

bool FaceImage::contains(std::span<const double> x, double tol) const {
  for (const auto& b : branches)
    if (b.contains(x, tol)) return true;
  return false;
}

FaceImage face_image_rank_one(const OrderedSpectrum& lambda, std::size_t i) {
  if (lambda.strictness() != Strictness::strict)
    fail(ErrorCode::invalid_argument, "face images need a strict base spectrum");
  const auto& l = lambda.values();
  const std::size_t n = l.size();
  if (i >= n) fail(ErrorCode::index_out_of_range, "face index out of range");

  const auto box_interval = [&](std::size_t j) {
    return j + 1 < n ? Interval::closed(l[j], l[j + 1]) : Interval::ray_above(l[j]);
  };

  FaceImage image;
  image.face_index = i;

  // Branch with coordinate i pinned at lambda_i; coordinates above i keep
  // their shifted-up intervals.
  FaceBox low;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i)
      low.coords.push_back(Interval::point(l[i]));
    else
      low.coords.push_back(box_interval(j));
  }
  image.branches.push_back(std::move(low));

  // Branch with coordinate i-1 pinned at lambda_i (absent for the first face).
  if (i >= 1) {
    FaceBox high;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i - 1)
        high.coords.push_back(Interval::point(l[i]));
      else
        high.coords.push_back(box_interval(j));
    }
    image.branches.push_back(std::move(high));
  }
  return image;
}

}  // namespace interlace
