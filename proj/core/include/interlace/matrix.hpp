#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "interlace/errors.hpp"

namespace interlace {

/// Minimal dense row-major matrix. Everything here is desk scale, so the
/// implementation favors clarity over blocking/vectorization.
template <typename Scalar>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, Scalar fill = Scalar{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar{1};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Scalar>& data() { return data_; }
  const std::vector<Scalar>& data() const { return data_; }

  std::vector<Scalar> column(std::size_t j) const {
    std::vector<Scalar> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

using RealMatrix = DenseMatrix<double>;
using ComplexMatrix = DenseMatrix<std::complex<double>>;

inline double abs_value(double x) { return std::abs(x); }
inline double abs_value(const std::complex<double>& x) { return std::abs(x); }

inline double conj_value(double x) { return x; }
inline std::complex<double> conj_value(const std::complex<double>& x) { return std::conj(x); }

template <typename Scalar>
double frobenius_norm(const DenseMatrix<Scalar>& m) {
  double s = 0.0;
  for (const auto& x : m.data()) s += std::norm(std::complex<double>(x));
  return std::sqrt(s);
}

template <typename Scalar>
double max_abs(const DenseMatrix<Scalar>& m) {
  double s = 0.0;
  for (const auto& x : m.data()) s = std::max(s, abs_value(x));
  return s;
}

template <typename Scalar>
DenseMatrix<Scalar> multiply(const DenseMatrix<Scalar>& a, const DenseMatrix<Scalar>& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::length_mismatch, "matrix product shape mismatch");
  DenseMatrix<Scalar> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <typename Scalar>
DenseMatrix<Scalar> adjoint(const DenseMatrix<Scalar>& m) {
  DenseMatrix<Scalar> t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = conj_value(m(i, j));
  return t;
}

/// Max deviation of a(i,j) from conj(a(j,i)).
template <typename Scalar>
double hermitian_defect(const DenseMatrix<Scalar>& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      s = std::max(s, abs_value(static_cast<Scalar>(m(i, j) - conj_value(m(j, i)))));
  return s;
}

/// Max deviation of Q*Q from the identity.
template <typename Scalar>
double unitary_defect(const DenseMatrix<Scalar>& q) {
  if (!q.square()) return std::numeric_limits<double>::infinity();
  DenseMatrix<Scalar> g = multiply(adjoint(q), q);
  double s = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      const Scalar target = (i == j) ? Scalar{1} : Scalar{0};
      s = std::max(s, abs_value(static_cast<Scalar>(g(i, j) - target)));
    }
  return s;
}

/// Solve A x = b by LU with partial pivoting. Throws on (numerically) singular A.
std::vector<double> solve_linear(RealMatrix a, std::vector<double> b);

/// Determinant via the same pivoted elimination.
double determinant(RealMatrix a);

/// Smallest pivot magnitude met during pivoted elimination; a cheap
/// invertibility margin for property checks.
double min_pivot(RealMatrix a);

}  // namespace interlace
