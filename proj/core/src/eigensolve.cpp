#include "interlace/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace interlace {

namespace {

double off_diagonal_norm(const RealMatrix& a) {
  double s = 0.0;
  const std::size_t n = a.rows();
  for (std::size_t p = 0; p + 1 < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) s += a(p, q) * a(p, q);
  return std::sqrt(2.0 * s);
}

void sort_ascending(std::vector<double>& values, RealMatrix& vectors) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> sorted_values(n);
  RealMatrix sorted_vectors(vectors.rows(), n);
  for (std::size_t j = 0; j < n; ++j) {
    sorted_values[j] = values[order[j]];
    for (std::size_t i = 0; i < vectors.rows(); ++i)
      sorted_vectors(i, j) = vectors(i, order[j]);
  }
  values = std::move(sorted_values);
  vectors = std::move(sorted_vectors);
}

}  // namespace

EigenDecomposition eig_hermitian(const RealMatrix& t, const JacobiOptions& opts) {
  if (!t.square()) fail(ErrorCode::length_mismatch, "eigensolve needs a square matrix");
  const std::size_t n = t.rows();
  const double fro = frobenius_norm(t);
  if (hermitian_defect(t) > opts.hermitian_tol * std::max(1.0, fro))
    fail(ErrorCode::not_hermitian, "NotHermitian: matrix is not symmetric");

  // Work on the symmetrized copy; asymmetry within tolerance is round-off.
  RealMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (t(i, j) + t(j, i));
  RealMatrix v = RealMatrix::identity(n);

  const double target = opts.off_tol * fro;
  bool converged = n < 2 || off_diagonal_norm(a) <= target;

  for (int sweep = 0; !converged && sweep < opts.max_sweeps; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double g = 100.0 * std::abs(apq);
        // Rotation would be lost in round-off: flush the entry instead.
        if (std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
            std::abs(a(q, q)) + g == std::abs(a(q, q))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double h = a(q, q) - a(p, p);
        double tpar;
        if (std::abs(h) + g == std::abs(h)) {
          tpar = apq / h;
        } else {
          const double theta = 0.5 * h / apq;
          tpar = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) tpar = -tpar;
        }
        const double c = 1.0 / std::sqrt(1.0 + tpar * tpar);
        const double s = tpar * c;
        const double tau = s / (1.0 + c);

        a(p, p) -= tpar * apq;
        a(q, q) += tpar * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
          a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
    converged = off_diagonal_norm(a) <= target;
  }
  if (!converged)
    fail(ErrorCode::no_convergence, "NoConvergence: Jacobi sweep budget exhausted");

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i);
  sort_ascending(values, v);
  return {OrderedSpectrum::weak(std::move(values)), std::move(v)};
}

ComplexEigenDecomposition eig_hermitian(const ComplexMatrix& t, const JacobiOptions& opts) {
  if (!t.square()) fail(ErrorCode::length_mismatch, "eigensolve needs a square matrix");
  const std::size_t n = t.rows();
  const double fro = frobenius_norm(t);
  if (hermitian_defect(t) > opts.hermitian_tol * std::max(1.0, fro))
    fail(ErrorCode::not_hermitian, "NotHermitian: matrix is not Hermitian");

  // Real embedding [[A, -B], [B, A]] of A + iB. Each eigenvalue of t shows up
  // twice: (x; y) and (-y; x) both embed the eigenvector x + iy.
  RealMatrix m(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::complex<double> h = 0.5 * (t(i, j) + std::conj(t(j, i)));
      m(i, j) = h.real();
      m(i, n + j) = -h.imag();
      m(n + i, j) = h.imag();
      m(n + i, n + j) = h.real();
    }

  const EigenDecomposition real_dec = eig_hermitian(m, opts);
  const auto& vals = real_dec.values.values();
  const double spread_scale = (vals.back() - vals.front()) + 1.0;
  const double cluster_tol = 1e-9 * spread_scale;

  std::vector<double> out_values;
  ComplexMatrix out_vectors(n, n);
  out_values.reserve(n);

  std::size_t idx = 0;
  std::vector<std::vector<std::complex<double>>> accepted;  // vectors of current cluster
  while (idx < 2 * n) {
    // Collect one cluster of (numerically equal) embedded eigenvalues.
    std::size_t end = idx + 1;
    while (end < 2 * n && vals[end] - vals[end - 1] <= cluster_tol) ++end;
    const std::size_t cluster = end - idx;
    const std::size_t want = cluster / 2;

    accepted.clear();
    for (std::size_t cand = idx; cand < end && accepted.size() < want; ++cand) {
      std::vector<std::complex<double>> w(n);
      for (std::size_t i = 0; i < n; ++i)
        w[i] = std::complex<double>(real_dec.vectors(i, cand), real_dec.vectors(n + i, cand));
      // Project out already accepted directions (candidates may embed the
      // same complex line twice).
      for (const auto& u : accepted) {
        std::complex<double> dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += w[i] * std::conj(u[i]);
        for (std::size_t i = 0; i < n; ++i) w[i] -= dot * u[i];
      }
      double norm = 0.0;
      for (const auto& z : w) norm += std::norm(z);
      norm = std::sqrt(norm);
      if (norm < 0.3) continue;
      for (auto& z : w) z /= norm;
      accepted.push_back(std::move(w));
      out_values.push_back(vals[idx + (accepted.size() - 1) * 2]);
    }
    if (accepted.size() != want)
      fail(ErrorCode::no_convergence, "embedded eigenvector pairing failed");
    for (const auto& w : accepted) {
      const std::size_t col = out_values.size() - accepted.size() +
                              (&w - accepted.data());
      for (std::size_t i = 0; i < n; ++i) out_vectors(i, col) = w[i];
    }
    idx = end;
  }
  if (out_values.size() != n)
    fail(ErrorCode::no_convergence, "embedded eigenvalue pairing failed");

  return {OrderedSpectrum::weak(std::move(out_values)), std::move(out_vectors)};
}

RealMatrix assemble_rank_one(const OrderedSpectrum& lambda, const std::vector<double>& v) {
  const std::size_t n = lambda.size();
  if (v.size() != n) fail(ErrorCode::length_mismatch, "rank-one assembly: v length != n");
  RealMatrix t(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    t(i, i) = lambda[i];
    for (std::size_t j = 0; j < n; ++j) t(i, j) += v[i] * v[j];
  }
  return t;
}

ComplexMatrix assemble_rank_one(const OrderedSpectrum& lambda, const FieldVector& v) {
  const std::size_t n = lambda.size();
  if (v.size() != n) fail(ErrorCode::length_mismatch, "rank-one assembly: v length != n");
  ComplexMatrix t(n, n);
  const auto& e = v.entries();
  for (std::size_t i = 0; i < n; ++i) {
    t(i, i) = lambda[i];
    for (std::size_t j = 0; j < n; ++j) t(i, j) += e[i] * std::conj(e[j]);
  }
  return t;
}

RealMatrix assemble_arrowhead(const OrderedSpectrum& lambda, const std::vector<double>& v,
                              double c) {
  const std::size_t n = lambda.size();
  if (v.size() != n) fail(ErrorCode::length_mismatch, "arrowhead assembly: v length != n");
  RealMatrix t(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    t(i, i) = lambda[i];
    t(i, n) = v[i];
    t(n, i) = v[i];
  }
  t(n, n) = c;
  return t;
}

ComplexMatrix assemble_arrowhead(const OrderedSpectrum& lambda, const FieldVector& v, double c) {
  const std::size_t n = lambda.size();
  if (v.size() != n) fail(ErrorCode::length_mismatch, "arrowhead assembly: v length != n");
  ComplexMatrix t(n + 1, n + 1);
  const auto& e = v.entries();
  for (std::size_t i = 0; i < n; ++i) {
    t(i, i) = lambda[i];
    t(i, n) = e[i];
    t(n, i) = std::conj(e[i]);
  }
  t(n, n) = c;
  return t;
}

}  // namespace interlace
