#include "bse/backend.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <cblas.h>
#include <lapacke.h>

namespace bse {

namespace {

void require_square(const Matrix& m, const char* who) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << who << ": matrix is " << m.rows() << "x" << m.cols() << ", expected square";
    throw DimensionMismatch(os.str());
  }
}

CBLAS_TRANSPOSE to_cblas(Op op) { return op == Op::None ? CblasNoTrans : CblasConjTrans; }

}  // namespace

HermitianEig hermitian_eig(const Matrix& m) {
  require_square(m, "hermitian_eig");
  const lapack_int n = static_cast<lapack_int>(m.rows());
  HermitianEig out;
  out.vectors = m;  // zheevd overwrites with the eigenvectors
  out.values.resize(n);
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                         out.vectors.data(), n, out.values.data());
  if (info > 0) {
    std::ostringstream os;
    os << "zheevd failed to converge (info=" << info << ", n=" << n << ")";
    throw ConvergenceFailure(os.str());
  }
  if (info < 0) {
    throw Error("zheevd: invalid argument " + std::to_string(-info));
  }
  return out;
}

CholeskyLower cholesky_lower(const Matrix& m) {
  require_square(m, "cholesky_lower");
  const lapack_int n = static_cast<lapack_int>(m.rows());
  CholeskyLower out{m};
  const lapack_int info = LAPACKE_zpotrf(LAPACK_COL_MAJOR, 'L', n, out.l.data(), n);
  if (info > 0) {
    std::ostringstream os;
    os << "leading minor of order " << info << " is not positive definite";
    throw NotPositiveDefinite(os.str(), static_cast<Index>(info) - 1);
  }
  if (info < 0) {
    throw Error("zpotrf: invalid argument " + std::to_string(-info));
  }
  out.l.triangularView<Eigen::StrictlyUpper>().setZero();
  return out;
}

SvdTriple svd(const Matrix& m) {
  require_square(m, "svd");
  const lapack_int n = static_cast<lapack_int>(m.rows());
  Matrix work = m;  // zgesvd destroys its input
  SvdTriple out;
  out.u.resize(n, n);
  out.s.resize(n);
  Matrix vt(n, n);
  std::vector<double> superb(std::max<lapack_int>(1, n - 1));
  const lapack_int info =
      LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'A', 'A', n, n, work.data(), n, out.s.data(),
                     out.u.data(), n, vt.data(), n, superb.data());
  if (info > 0) {
    std::ostringstream os;
    os << "zgesvd failed to converge (" << info << " superdiagonals unconverged)";
    throw ConvergenceFailure(os.str());
  }
  if (info < 0) {
    throw Error("zgesvd: invalid argument " + std::to_string(-info));
  }
  out.v = vt.adjoint();
  return out;
}

Matrix hpd_sqrt(const Matrix& m) {
  const HermitianEig eig = hermitian_eig(m);
  const Index n = m.rows();
  const double lambda_max = eig.values(n - 1);
  const double floor = machine_eps() * lambda_max;
  for (Index i = 0; i < n; ++i) {
    if (!(eig.values(i) > floor)) {
      std::ostringstream os;
      os << "eigenvalue " << eig.values(i) << " at index " << i
         << " is at or below eps*lambda_max = " << floor
         << "; matrix is not safely positive definite";
      throw NotPositiveDefinite(os.str(), i);
    }
  }
  const Matrix scaled = eig.vectors * eig.values.array().sqrt().matrix().asDiagonal();
  Matrix s = matmul(scaled, eig.vectors, {.op_b = Op::Adjoint});
  // the two products leave an O(eps) skew part; make S exactly Hermitian
  s = 0.5 * (s + s.adjoint()).eval();
  return s;
}

Matrix tri_solve(const CholeskyLower& l, const Matrix& rhs, Side side, Op op) {
  const Index n = l.l.rows();
  require_square(l.l, "tri_solve");
  if ((side == Side::Left && rhs.rows() != n) || (side == Side::Right && rhs.cols() != n)) {
    throw DimensionMismatch("tri_solve: right-hand side does not conform");
  }
  const double underflow = std::numeric_limits<double>::min();
  for (Index i = 0; i < n; ++i) {
    if (std::abs(l.l(i, i)) < underflow) {
      throw SingularFactor("triangular factor has a vanishing diagonal entry at index " +
                           std::to_string(i));
    }
  }
  Matrix x = rhs;
  const Complex one(1.0, 0.0);
  cblas_ztrsm(CblasColMajor, side == Side::Left ? CblasLeft : CblasRight, CblasLower,
              to_cblas(op), CblasNonUnit, static_cast<blasint>(x.rows()),
              static_cast<blasint>(x.cols()), &one, l.l.data(),
              static_cast<blasint>(n), x.data(), static_cast<blasint>(x.rows()));
  return x;
}

Matrix matmul(const Matrix& a, const Matrix& b, const MatmulOpts& opts) {
  const Index am = opts.op_a == Op::None ? a.rows() : a.cols();
  const Index ak = opts.op_a == Op::None ? a.cols() : a.rows();
  const Index bk = opts.op_b == Op::None ? b.rows() : b.cols();
  const Index bn = opts.op_b == Op::None ? b.cols() : b.rows();
  if (ak != bk) {
    std::ostringstream os;
    os << "matmul: inner dimensions differ (" << am << "x" << ak << " times " << bk << "x"
       << bn << ")";
    throw DimensionMismatch(os.str());
  }
  const Complex one(1.0, 0.0);
  const Complex zero(0.0, 0.0);

  const bool tri_a = opts.shape_a != Shape::General;
  const bool tri_b = opts.shape_b != Shape::General;
  if (tri_a && !tri_b) {
    // C = op(A) * B with A triangular: ztrmm works in place on a copy of B.
    require_square(a, "matmul (triangular operand)");
    Matrix c = opts.op_b == Op::None ? b : Matrix(b.adjoint());
    cblas_ztrmm(CblasColMajor, CblasLeft,
                opts.shape_a == Shape::Lower ? CblasLower : CblasUpper, to_cblas(opts.op_a),
                CblasNonUnit, static_cast<blasint>(c.rows()), static_cast<blasint>(c.cols()),
                &one, a.data(), static_cast<blasint>(a.rows()), c.data(),
                static_cast<blasint>(c.rows()));
    return c;
  }
  if (tri_b && !tri_a) {
    require_square(b, "matmul (triangular operand)");
    Matrix c = opts.op_a == Op::None ? a : Matrix(a.adjoint());
    cblas_ztrmm(CblasColMajor, CblasRight,
                opts.shape_b == Shape::Lower ? CblasLower : CblasUpper, to_cblas(opts.op_b),
                CblasNonUnit, static_cast<blasint>(c.rows()), static_cast<blasint>(c.cols()),
                &one, b.data(), static_cast<blasint>(b.rows()), c.data(),
                static_cast<blasint>(c.rows()));
    return c;
  }

  Matrix c(am, bn);
  cblas_zgemm(CblasColMajor, to_cblas(opts.op_a), to_cblas(opts.op_b),
              static_cast<blasint>(am), static_cast<blasint>(bn), static_cast<blasint>(ak),
              &one, a.data(), static_cast<blasint>(a.rows()), b.data(),
              static_cast<blasint>(b.rows()), &zero, c.data(), static_cast<blasint>(am));
  return c;
}

}  // namespace bse
