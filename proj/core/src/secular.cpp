#include "interlace/secular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace interlace {

namespace {

constexpr int kMaxRootIterations = 200;

struct ActiveSystem {
  std::vector<double> poles;
  std::vector<double> weights;
  std::vector<double> deflated;  // poles with zero weight, passed through verbatim
  double weight_sum = 0.0;
};

ActiveSystem split_active(const SecularSystem& sys) {
  const std::size_t n = sys.poles.size();
  if (sys.weights.size() != n)
    fail(ErrorCode::length_mismatch, "secular system: weights length != poles length");
  if (sys.poles.strictness() != Strictness::strict)
    fail(ErrorCode::invalid_argument, "secular system needs strict poles");
  ActiveSystem act;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = sys.weights[i];
    if (!(w >= 0.0)) fail(ErrorCode::invalid_argument, "secular weights must be >= 0");
    if (w == 0.0) {
      act.deflated.push_back(sys.poles[i]);
    } else {
      act.poles.push_back(sys.poles[i]);
      act.weights.push_back(w);
      act.weight_sum += w;
    }
  }
  return act;
}

OrderedSpectrum merge_sorted(std::vector<double> roots, const std::vector<double>& deflated) {
  roots.insert(roots.end(), deflated.begin(), deflated.end());
  std::sort(roots.begin(), roots.end());
  return OrderedSpectrum::weak(std::move(roots));
}

// Safeguarded Newton on a strictly increasing function over (lo, hi):
// conceptually f < 0 at the left end and f > 0 at the right end (the ends may
// be poles and are never evaluated). Bisection maintains the bracket; Newton
// steps are taken whenever they stay strictly inside it.
template <typename F, typename DF>
double solve_increasing(F f, DF df, double lo, double hi) {
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < kMaxRootIterations; ++it) {
    if (!(x > lo && x < hi)) {
      x = 0.5 * (lo + hi);
      if (x <= lo || x >= hi) return hi;  // bracket exhausted at pole spacing
    }
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (fx < 0.0)
      lo = x;
    else
      hi = x;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return mid <= lo ? hi : mid;
    double next = mid;
    if (std::isfinite(fx)) {
      const double dfx = df(x);
      const double newton = x - fx / dfx;
      if (std::isfinite(newton) && newton > lo && newton < hi) next = newton;
    }
    if (next == x) return x;
    x = next;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

OrderedSpectrum secular_roots_rank_one(const SecularSystem& sys) {
  if (sys.shift)
    fail(ErrorCode::invalid_argument, "rank-one secular system must not carry a shift");
  ActiveSystem act = split_active(sys);
  const std::size_t m = act.poles.size();
  if (m == 0) {
    std::vector<double> copy = sys.poles.values();
    return OrderedSpectrum::weak(std::move(copy));
  }

  const auto f = [&](double x) {
    double s = 1.0;
    for (std::size_t i = 0; i < m; ++i) s += act.weights[i] / (act.poles[i] - x);
    return s;
  };
  const auto df = [&](double x) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double d = act.poles[i] - x;
      s += act.weights[i] / (d * d);
    }
    return s;
  };

  std::vector<double> roots(m);
  for (std::size_t j = 0; j < m; ++j) {
    double lo = act.poles[j];
    double hi;
    if (j + 1 < m) {
      hi = act.poles[j + 1];
    } else {
      // Trace bound: the top root cannot exceed the last pole plus the total
      // weight. Pad until the bound is on the nonnegative side in floats.
      hi = act.poles[m - 1] + act.weight_sum;
      double pad = 4.0 * std::numeric_limits<double>::epsilon() *
                   (std::abs(hi) + act.weight_sum);
      int guard = 0;
      while (f(hi) < 0.0 && guard++ < 64) {
        hi += pad;
        pad *= 2.0;
      }
    }
    roots[j] = solve_increasing(f, df, lo, hi);
  }
  return merge_sorted(std::move(roots), act.deflated);
}

OrderedSpectrum secular_roots_arrowhead(const SecularSystem& sys) {
  if (!sys.shift)
    fail(ErrorCode::invalid_argument, "arrowhead secular system requires a shift");
  const double c = *sys.shift;
  if (!std::isfinite(c)) fail(ErrorCode::invalid_argument, "shift must be finite");
  ActiveSystem act = split_active(sys);
  const std::size_t m = act.poles.size();
  if (m == 0) {
    std::vector<double> roots{c};
    return merge_sorted(std::move(roots), act.deflated);
  }

  // g decreases between poles; solve_increasing gets -g.
  const auto f = [&](double x) {
    double s = x - c;
    for (std::size_t i = 0; i < m; ++i) s += act.weights[i] / (act.poles[i] - x);
    return s;
  };
  const auto df = [&](double x) {
    double s = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double d = act.poles[i] - x;
      s += act.weights[i] / (d * d);
    }
    return s;
  };

  const double border = std::sqrt(act.weight_sum);
  std::vector<double> roots(m + 1);
  for (std::size_t j = 0; j < m + 1; ++j) {
    double lo, hi;
    if (j == 0) {
      // Weyl bound: no eigenvalue below min(diagonal) - ||border||.
      lo = std::min(c, act.poles[0]) - border;
      double pad = 4.0 * std::numeric_limits<double>::epsilon() *
                       (std::abs(lo) + border) +
                   std::numeric_limits<double>::min();
      int guard = 0;
      while (f(lo) > 0.0 && guard++ < 64) {
        lo -= pad;
        pad *= 2.0;
      }
      hi = act.poles[0];
    } else if (j < m) {
      lo = act.poles[j - 1];
      hi = act.poles[j];
    } else {
      lo = act.poles[m - 1];
      hi = std::max(c, act.poles[m - 1]) + border;
      double pad = 4.0 * std::numeric_limits<double>::epsilon() *
                       (std::abs(hi) + border) +
                   std::numeric_limits<double>::min();
      int guard = 0;
      while (f(hi) < 0.0 && guard++ < 64) {
        hi += pad;
        pad *= 2.0;
      }
    }
    roots[j] = solve_increasing(f, df, lo, hi);
  }
  return merge_sorted(std::move(roots), act.deflated);
}

}  // namespace interlace
