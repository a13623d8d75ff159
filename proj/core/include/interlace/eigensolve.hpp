#pragma once

#include <optional>

#include "interlace/matrix.hpp"
#include "interlace/types.hpp"

namespace interlace {

/// Eigenvalues ascending; column j of `vectors` is the normalized eigenvector
/// for values[j].
struct EigenDecomposition {
  OrderedSpectrum values;
  RealMatrix vectors;
};

struct ComplexEigenDecomposition {
  OrderedSpectrum values;
  ComplexMatrix vectors;
};

struct JacobiOptions {
  double off_tol = 1e-13;       // stop when off-diagonal Frobenius <= off_tol * ||T||_F
  int max_sweeps = 60;
  double hermitian_tol = 1e-10; // input symmetry check, relative to ||T||_F
};

/// Cyclic-by-row Jacobi for real symmetric matrices. Unconditionally
/// convergent; intended for desk-scale n. Throws NotHermitian / NoConvergence.
EigenDecomposition eig_hermitian(const RealMatrix& t, const JacobiOptions& opts = {});

/// Complex Hermitian eigensolve through the real 2n x 2n embedding
/// [[Re, -Im], [Im, Re]]; the doubled eigenvalues are de-duplicated by pairing.
ComplexEigenDecomposition eig_hermitian(const ComplexMatrix& t, const JacobiOptions& opts = {});

/// D + v (x) v for a real vector.
RealMatrix assemble_rank_one(const OrderedSpectrum& lambda, const std::vector<double>& v);
/// D + v (x) v* for a complex vector.
ComplexMatrix assemble_rank_one(const OrderedSpectrum& lambda, const FieldVector& v);

/// Arrowhead [[D, v], [v*, c]] for a real border.
RealMatrix assemble_arrowhead(const OrderedSpectrum& lambda, const std::vector<double>& v,
                              double c);
ComplexMatrix assemble_arrowhead(const OrderedSpectrum& lambda, const FieldVector& v, double c);

}  // namespace interlace
