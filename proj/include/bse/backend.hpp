#pragma once

// Contract layer for the dense factorizations the solvers consume. The
// implementation delegates to LAPACK/BLAS kernels; everything callers may
// rely on is stated here, not in the backing library's documentation.

#include "bse/types.hpp"

namespace bse {

/// Eigendecomposition of a Hermitian matrix, values ascending,
/// columns of `vectors` orthonormal.
struct HermitianEig {
  RealVector values;
  Matrix vectors;
};

/// Lower Cholesky factor with real positive diagonal; strict upper
/// triangle is zero.
struct CholeskyLower {
  Matrix l;
};

/// m = u * diag(s) * v^H with s nonnegative descending and u, v unitary.
struct SvdTriple {
  Matrix u;
  RealVector s;
  Matrix v;
};

enum class Side { Left, Right };
enum class Op { None, Adjoint };
enum class Shape { General, Lower, Upper };

struct MatmulOpts {
  Op op_a = Op::None;
  Op op_b = Op::None;
  Shape shape_a = Shape::General;
  Shape shape_b = Shape::General;
};

/// Backward-stable Hermitian eigendecomposition (reads the lower triangle).
HermitianEig hermitian_eig(const Matrix& m);

/// Cholesky factorization m = L L^H. Throws NotPositiveDefinite with the
/// zero-based index of the first failing pivot; this is the definiteness
/// certificate used by product_pair.
CholeskyLower cholesky_lower(const Matrix& m);

/// Full singular value decomposition of a square matrix.
SvdTriple svd(const Matrix& m);

/// Principal square root of a Hermitian positive definite matrix, computed
/// through hermitian_eig as V sqrt(D) V^H. Eigenvalues at or below
/// eps*lambda_max are refused (NotPositiveDefinite), never clamped: the
/// square-root solver later inverts the result.
Matrix hpd_sqrt(const Matrix& m);

/// Solves op(L) X = rhs (Side::Left) or X op(L) = rhs (Side::Right) with L
/// the lower-triangular Cholesky factor. Throws SingularFactor if a diagonal
/// entry is below the underflow threshold.
Matrix tri_solve(const CholeskyLower& l, const Matrix& rhs, Side side = Side::Left,
                 Op op = Op::None);

/// op_a(a) * op_b(b). Triangular shape hints route to the triangular
/// multiply kernel, skipping the known-zero region of that operand.
Matrix matmul(const Matrix& a, const Matrix& b, const MatmulOpts& opts = {});

}  // namespace bse
