#include "interlace/matrix.hpp"

#include <cmath>
#include <limits>

namespace interlace {

namespace {

// Row-pivoted in-place elimination. Returns the permutation sign and leaves
// the factors in `a`; pivots end up on the diagonal.
double eliminate(RealMatrix& a, std::vector<double>* rhs, double* smallest_pivot) {
  const std::size_t n = a.rows();
  double sign = 1.0;
  double min_piv = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double cand = std::abs(a(i, k));
      if (cand > best) {
        best = cand;
        piv = i;
      }
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      if (rhs) std::swap((*rhs)[k], (*rhs)[piv]);
      sign = -sign;
    }
    min_piv = std::min(min_piv, std::abs(a(k, k)));
    if (a(k, k) == 0.0) {
      if (smallest_pivot) *smallest_pivot = 0.0;
      return 0.0;  // singular
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      a(i, k) = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      if (rhs) (*rhs)[i] -= f * (*rhs)[k];
    }
  }
  if (smallest_pivot) *smallest_pivot = min_piv;
  return sign;
}

}  // namespace

std::vector<double> solve_linear(RealMatrix a, std::vector<double> b) {
  if (!a.square() || a.rows() != b.size())
    fail(ErrorCode::length_mismatch, "linear solve shape mismatch");
  const std::size_t n = a.rows();
  double min_piv = 0.0;
  const double sign = eliminate(a, &b, &min_piv);
  if (sign == 0.0) fail(ErrorCode::no_convergence, "singular linear system");
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a(k, j) * b[j];
    b[k] = s / a(k, k);
  }
  return b;
}

double determinant(RealMatrix a) {
  if (!a.square()) fail(ErrorCode::length_mismatch, "determinant of non-square matrix");
  const double sign = eliminate(a, nullptr, nullptr);
  if (sign == 0.0) return 0.0;
  double det = sign;
  for (std::size_t k = 0; k < a.rows(); ++k) det *= a(k, k);
  return det;
}

double min_pivot(RealMatrix a) {
  if (!a.square()) fail(ErrorCode::length_mismatch, "min_pivot of non-square matrix");
  double min_piv = 0.0;
  eliminate(a, nullptr, &min_piv);
  return min_piv;
}

}  // namespace interlace
