#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "interlace/types.hpp"

namespace interlace {

/// One failed inequality in an interlacing chain: mu[mu_index] fell on the
/// wrong side of lambda[lambda_index].
struct InterlacingViolation {
  std::size_t mu_index = 0;
  std::size_t lambda_index = 0;
  bool mu_above = false;  // true: mu > lambda bound; false: mu < lambda bound
};

/// "mu[0] > lambda[1]" style description.
std::string describe(const InterlacingViolation& v);

/// First violated inequality of the rank-one (lambda_i <= mu_i <= lambda_{i+1})
/// or bordered (mu_1 <= lambda_1 <= mu_2 <= ... ) chain, allowing `slack`.
/// Throws LengthMismatch when the sizes do not fit the mode.
std::optional<InterlacingViolation> find_interlacing_violation(
    const OrderedSpectrum& lambda, const OrderedSpectrum& mu, PerturbationMode mode,
    double slack = 0.0);

bool check_interlacing_rank_one(const OrderedSpectrum& lambda, const OrderedSpectrum& mu);
bool check_interlacing_bordered(const OrderedSpectrum& lambda, const OrderedSpectrum& mu);

/// Boundary contacts of mu with the interlacing box of lambda.
/// Throws NotInPolytope when interlacing fails by more than tol_face.
FaceProfile classify_faces(const OrderedSpectrum& lambda, const OrderedSpectrum& mu,
                           PerturbationMode mode,
                           std::optional<TolerancePolicy> tol = std::nullopt);

/// Closed real interval, possibly unbounded on either side. Membership at an
/// unbounded end is open (no finite endpoint to attain).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_unbounded = false;
  bool hi_unbounded = false;

  static Interval point(double x) { return {x, x, false, false}; }
  static Interval closed(double lo, double hi) { return {lo, hi, false, false}; }
  static Interval ray_above(double lo) { return {lo, 0.0, false, true}; }
  static Interval ray_below(double hi) { return {0.0, hi, true, false}; }

  bool contains(double x, double tol) const {
    if (!lo_unbounded && x < lo - tol) return false;
    if (!hi_unbounded && x > hi + tol) return false;
    return true;
  }
};

/// Product of coordinate intervals.
struct FaceBox {
  std::vector<Interval> coords;

  bool contains(std::span<const double> x, double tol) const;
};

/// Image of one domain face: a union of (at most two) boxes.
struct FaceImage {
  std::size_t face_index = 0;  // 0-based domain face E_i
  std::vector<FaceBox> branches;

  bool contains(std::span<const double> x, double tol) const;
};

/// Image of the face {v : v_i = 0} under the rank-one map: the box with
/// coordinate i pinned at lambda_i, union (for i > 0) the box with coordinate
/// i-1 pinned at lambda_i. Index is 0-based. Throws IndexOutOfRange.
FaceImage face_image_rank_one(const OrderedSpectrum& lambda, std::size_t i);

}  // namespace interlace
