#include "bse/solvers.hpp"

#include "bse/backend.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace bse {

namespace {

struct ClampedScale {
  RealVector lambda;               // ascending, strictly positive
  std::vector<Index> flagged;      // clamped entries
  std::vector<Index> nonpositive;  // subset of flagged where the square came out <= 0
  double floor = 0.0;
};

// Eigenvalues of H from computed eigenvalues of the squared problem:
// lambda = sqrt(d). Entries whose square root would fall at or below
// eps * lambda_max are clamped there and flagged -- the Lambda^{-1/2}
// scaling would otherwise blow up, and downstream use may only care about
// the large eigenvalues anyway.
ClampedScale lambda_from_squares(const RealVector& d) {
  const Index n = d.size();
  const double d_max = d(n - 1);
  if (!(d_max > 0.0)) {
    throw ConvergenceFailure("squared-problem spectrum has no positive eigenvalue");
  }
  ClampedScale out;
  out.floor = machine_eps() * std::sqrt(d_max);
  out.lambda.resize(n);
  for (Index i = 0; i < n; ++i) {
    const double lam = d(i) > 0.0 ? std::sqrt(d(i)) : 0.0;
    if (lam < out.floor) {
      out.lambda(i) = out.floor;
      out.flagged.push_back(i);
      if (!(d(i) > 0.0)) out.nonpositive.push_back(i);
    } else {
      out.lambda(i) = lam;
    }
  }
  return out;
}

// Columns whose squared eigenvalue came out nonpositive are rebuilt the way
// the plain algorithm evaluates them: the principal complex fourth root of a
// negative mu has phase pi/4, which rotates the two factor columns against
// each other and collapses the Sigma-norm of the assembled vector. That
// collapse is the honest signature of the breakdown; clamping the phase away
// would fake a Sigma-orthonormal column out of garbage.
void rebuild_nonpositive_columns(Matrix& v, const Matrix& v1, const Matrix& v2,
                                 const RealVector& d, const ClampedScale& cs) {
  const Index n = v1.rows();
  for (const Index j : cs.nonpositive) {
    const double mag = std::max(std::sqrt(std::abs(d(j))), cs.floor);  // |sqrt(mu)|
    const Complex quarter =
        std::sqrt(mag) * Complex(std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0);
    const Eigen::VectorXcd x = v1.col(j) * quarter;
    const Eigen::VectorXcd y = v2.col(j) / quarter;
    v.col(j).head(n) = 0.5 * (x + y);
    v.col(j).tail(n) = 0.5 * (y - x);
  }
}

// Same clamping rule applied to singular values (given descending, returned
// ascending together with the matching column permutation applied by caller).
ClampedScale clamp_singular_ascending(const RealVector& s_descending) {
  const Index n = s_descending.size();
  const double s_max = s_descending(0);
  if (!(s_max > 0.0)) {
    throw ConvergenceFailure("singular spectrum is identically zero");
  }
  const double floor = machine_eps() * s_max;
  ClampedScale out;
  out.lambda.resize(n);
  for (Index i = 0; i < n; ++i) {
    const double s = s_descending(n - 1 - i);
    if (s < floor) {
      out.lambda(i) = floor;
      out.flagged.push_back(i);
    } else {
      out.lambda(i) = s;
    }
  }
  return out;
}

RealVector ones(Index n) { return RealVector::Ones(n); }

}  // namespace

SpectralResult solve_sqrt(const BseMatrixI& h) {
  const ProductPair pp = product_pair(h);
  Matrix s;
  try {
    s = hpd_sqrt(pp.m2);
  } catch (const NotPositiveDefinite& e) {
    throw NotDefinite(Block::M2, std::string("square root of A-B failed: ") + e.what());
  }
  const Matrix m = matmul(s, matmul(pp.m1, s));
  const HermitianEig eig = hermitian_eig(m);
  const ClampedScale cs = lambda_from_squares(eig.values);

  // V1 = S^{-1} V_M via the Cholesky factor of S (S is HPD by construction).
  const CholeskyLower ls = cholesky_lower(s);
  Matrix v1 = tri_solve(ls, eig.vectors);
  v1 = tri_solve(ls, v1, Side::Left, Op::Adjoint);
  const Matrix v2 = matmul(s, eig.vectors);

  const HalfSpectralFactors factors{v1, v2, cs.lambda.cwiseProduct(cs.lambda),
                                    ones(h.n())};
  Matrix v = assemble_eigenvectors(factors);
  rebuild_nonpositive_columns(v, v1, v2, eig.values, cs);
  return SpectralResult{cs.lambda, std::move(v), Method::Sqrt, cs.flagged};
}

SpectralResult solve_chol(const BseMatrixI& h) {
  const ProductPair pp = product_pair(h);
  const CholeskyLower l = cholesky_lower(pp.m2);
  Matrix m = matmul(l.l, pp.m1, {.op_a = Op::Adjoint, .shape_a = Shape::Lower});
  m = matmul(m, l.l, {.shape_b = Shape::Lower});
  const HermitianEig eig = hermitian_eig(m);
  const ClampedScale cs = lambda_from_squares(eig.values);

  const Matrix v1 = tri_solve(l, eig.vectors, Side::Left, Op::Adjoint);
  const Matrix v2 = matmul(l.l, eig.vectors, {.shape_a = Shape::Lower});

  const HalfSpectralFactors factors{v1, v2, cs.lambda.cwiseProduct(cs.lambda),
                                    ones(h.n())};
  Matrix v = assemble_eigenvectors(factors);
  rebuild_nonpositive_columns(v, v1, v2, eig.values, cs);
  return SpectralResult{cs.lambda, std::move(v), Method::Chol, cs.flagged};
}

SpectralResult solve_chol_svd(const BseMatrixI& h) {
  const ProductPair pp = product_pair(h);
  const CholeskyLower l1 = cholesky_lower(pp.m1);
  const CholeskyLower l2 = cholesky_lower(pp.m2);
  const Matrix c = matmul(l1.l, l2.l, {.op_a = Op::Adjoint, .shape_a = Shape::Lower});
  const SvdTriple dec = svd(c);

  const Index n = h.n();
  const ClampedScale cs = clamp_singular_ascending(dec.s);
  Matrix u_asc(n, n), v_asc(n, n);
  for (Index j = 0; j < n; ++j) {
    u_asc.col(j) = dec.u.col(n - 1 - j);
    v_asc.col(j) = dec.v.col(n - 1 - j);
  }

  const RealVector inv_sqrt = cs.lambda.array().rsqrt().matrix();
  const Matrix v1 =
      matmul(l1.l, u_asc, {.shape_a = Shape::Lower}) * inv_sqrt.asDiagonal();
  const Matrix v2 =
      matmul(l2.l, v_asc, {.shape_a = Shape::Lower}) * inv_sqrt.asDiagonal();

  const HalfSpectralFactors factors{v1, v2, cs.lambda, cs.lambda};
  return SpectralResult{cs.lambda, assemble_eigenvectors(factors), Method::CholSvd,
                        cs.flagged};
}

SpectralResult solve_reference(const BseMatrixI& h) {
  product_pair(h);  // definiteness gate, attributes failure to A+B or A-B
  const Index n = h.n();

  Matrix ham(2 * n, 2 * n);  // Sigma * H = [ A B ; B A ], Hermitian positive definite
  ham.topLeftCorner(n, n) = h.a();
  ham.topRightCorner(n, n) = h.b();
  ham.bottomLeftCorner(n, n) = h.b();
  ham.bottomRightCorner(n, n) = h.a();
  CholeskyLower l{Matrix{}};
  try {
    l = cholesky_lower(ham);
  } catch (const NotPositiveDefinite& e) {
    throw NotDefinite(Block::Full,
                      std::string("BSE Hamiltonian is not positive definite: ") + e.what());
  }

  Matrix sigma = Matrix::Identity(2 * n, 2 * n);
  sigma.bottomRightCorner(n, n) *= -1.0;
  Matrix k = tri_solve(l, sigma);                    // L^{-1} Sigma
  k = tri_solve(l, k, Side::Right, Op::Adjoint);     // ... L^{-H}
  const HermitianEig eig = hermitian_eig(k);

  Index n_pos = 0;
  for (Index i = 0; i < 2 * n; ++i) {
    if (eig.values(i) > 0.0) ++n_pos;
  }
  if (n_pos != n) {
    std::ostringstream os;
    os << "pencil inertia is off: expected " << n << " positive eigenvalues, found "
       << n_pos;
    throw ConvergenceFailure(os.str());
  }

  // Positive pencil eigenvalues m (ascending) map to lambda = 1/m descending;
  // rescale columns so v^H Sigma v = +1, then flip to ascending order.
  const Matrix w = eig.vectors.rightCols(n);
  const Matrix vw = tri_solve(l, w, Side::Left, Op::Adjoint);
  SpectralResult out;
  out.method = Method::Reference;
  out.lambda.resize(n);
  out.v.resize(2 * n, n);
  for (Index j = 0; j < n; ++j) {
    const double m_j = eig.values(n + j);
    out.lambda(n - 1 - j) = 1.0 / m_j;
    out.v.col(n - 1 - j) = vw.col(j) / std::sqrt(m_j);
  }
  return out;
}

SpectralResult solve(Method method, const BseMatrixI& h) {
  switch (method) {
    case Method::Sqrt: return solve_sqrt(h);
    case Method::Chol: return solve_chol(h);
    case Method::CholSvd: return solve_chol_svd(h);
    case Method::Reference: return solve_reference(h);
  }
  throw InvalidSpec("unknown method");
}

SpectralResult negative_spectrum(const BseMatrixI& h, const SpectralResult& r) {
  const Index n = h.n();
  if (r.v.rows() != 2 * n || r.v.cols() != r.lambda.size()) {
    throw DimensionMismatch("spectral result does not match the matrix dimension");
  }
  SpectralResult out;
  out.lambda = -r.lambda;
  out.v.resize(2 * n, r.v.cols());
  out.v.topRows(n) = r.v.bottomRows(n);
  out.v.bottomRows(n) = r.v.topRows(n);
  out.method = r.method;
  out.near_singular = r.near_singular;
  return out;
}

}  // namespace bse
