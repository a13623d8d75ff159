#pragma once

#include <optional>
#include <vector>

#include "interlace/types.hpp"

namespace interlace {

/// Poles and squared weights of a secular equation. `shift` present selects
/// the arrowhead form (border scalar c); absent selects diagonal-plus-rank-one.
struct SecularSystem {
  OrderedSpectrum poles;        // strict
  std::vector<double> weights;  // >= 0, squared magnitudes
  std::optional<double> shift;
};

/// The n roots of 1 + sum_i w_i / (poles_i - mu) = 0, ascending. Zero weights
/// deflate: the pole passes through verbatim. Roots interlace the poles.
OrderedSpectrum secular_roots_rank_one(const SecularSystem& sys);

/// The n+1 eigenvalues of the arrowhead matrix with diagonal (poles, c) and
/// border sqrt(weights): roots of (c - mu) - sum_i w_i / (poles_i - mu) = 0
/// plus deflated poles. Cauchy-interlaces the poles.
OrderedSpectrum secular_roots_arrowhead(const SecularSystem& sys);

}  // namespace interlace
