#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bse/gen.hpp"
#include "bse/types.hpp"
#include "bse/verify.hpp"

#include <cmath>

using namespace bse;

namespace {

Matrix scalar(double re) {
  Matrix m(1, 1);
  m(0, 0) = Complex(re, 0.0);
  return m;
}

// Hermitian test block with a deterministic fill.
Matrix random_hermitian(Index n, std::uint64_t seed, std::uint64_t stream) {
  GaussianStream g(seed, stream);
  Matrix m(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) m(i, j) = g.next_complex();
  return 0.5 * (m + m.adjoint()).eval();
}

}  // namespace

TEST_CASE("from_blocks accepts 1x1 Hermitian scalars") {
  const BseMatrixI h = from_blocks(scalar(2.0), scalar(1.0));
  CHECK(h.n() == 1);
  CHECK(h.a()(0, 0) == Complex(2.0, 0.0));
  CHECK(h.b()(0, 0) == Complex(1.0, 0.0));
}

TEST_CASE("from_blocks rejects a strictly upper triangular block") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(from_blocks(a, Matrix::Zero(2, 2)), NotHermitian);
}

TEST_CASE("from_blocks rejects mismatched shapes") {
  CHECK_THROWS_AS(from_blocks(Matrix::Identity(2, 2), Matrix::Identity(3, 3)),
                  DimensionMismatch);
  CHECK_THROWS_AS(from_blocks(Matrix::Zero(2, 3), Matrix::Zero(2, 3)), DimensionMismatch);
  CHECK_THROWS_AS(from_blocks(Matrix(), Matrix()), DimensionMismatch);
}

TEST_CASE("from_blocks symmetrizes deviation within tolerance") {
  Matrix a = Matrix::Identity(2, 2);
  a(0, 1) = Complex(0.5, 1e-14);
  a(1, 0) = Complex(0.5, 1e-14);  // conjugate would be -1e-14
  const BseMatrixI h = from_blocks(a, Matrix::Zero(2, 2), 1e-10);
  CHECK((h.a() - h.a().adjoint()).norm() == 0.0);
}

TEST_CASE("realize_full places blocks with the sign pattern") {
  const BseMatrixI h = from_blocks(scalar(2.0), scalar(1.0));
  const Matrix full = realize_full(h);
  CHECK(full(0, 0) == Complex(2.0));
  CHECK(full(0, 1) == Complex(1.0));
  CHECK(full(1, 0) == Complex(-1.0));
  CHECK(full(1, 1) == Complex(-2.0));

  const BseMatrixI diag = from_blocks(Matrix::Identity(2, 2), Matrix::Zero(2, 2));
  const Matrix d = realize_full(diag);
  CHECK(d.diagonal().real().isApprox(Eigen::Vector4d(1, 1, -1, -1)));
  CHECK(d.norm() == doctest::Approx(2.0));
}

TEST_CASE("realize_full output satisfies both form-I scalar product conditions") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const BseMatrixI h = from_blocks(random_hermitian(5, seed, 0), random_hermitian(5, seed, 1));
    CHECK(check_form1(realize_full(h), 1e-15));
  }
}

TEST_CASE("product_pair on scalars") {
  const ProductPair p = product_pair(from_blocks(scalar(2.0), scalar(1.0)));
  CHECK(p.m1(0, 0).real() == doctest::Approx(3.0));
  CHECK(p.m2(0, 0).real() == doctest::Approx(1.0));
}

TEST_CASE("product_pair reports the failing factor") {
  try {
    product_pair(from_blocks(scalar(1.0), scalar(2.0)));  // A-B = -1
    FAIL("expected NotDefinite");
  } catch (const NotDefinite& e) {
    CHECK(e.which() == Block::M2);
  }
}

TEST_CASE("product_pair certifies generated instances") {
  const BseMatrixI h = generate_conditioned({16, 10.0, 42});
  CHECK_NOTHROW(product_pair(h));
}

TEST_CASE("assemble_eigenvectors matches the 1x1 closed form") {
  // post-scaled factors of the canonical A=[2], B=[1] instance
  HalfSpectralFactors f;
  f.v1 = scalar(std::pow(3.0, 0.25));
  f.v2 = scalar(std::pow(3.0, -0.25));
  f.lambda1 = RealVector::Ones(1);
  f.lambda2 = RealVector::Ones(1);
  const Matrix v = assemble_eigenvectors(f);
  const double top = 0.5 * (std::pow(3.0, 0.25) + std::pow(3.0, -0.25));
  const double bottom = 0.5 * (std::pow(3.0, -0.25) - std::pow(3.0, 0.25));
  CHECK(v(0, 0).real() == doctest::Approx(top).epsilon(1e-14));
  CHECK(v(1, 0).real() == doctest::Approx(bottom).epsilon(1e-14));
  CHECK(top == doctest::Approx(1.0379549));    // frozen from the hand computation
  CHECK(bottom == doctest::Approx(-0.2781192));
}

TEST_CASE("assemble_eigenvectors with equal factors zeroes the bottom half") {
  HalfSpectralFactors f;
  f.v1 = Matrix::Zero(3, 1);
  f.v1(0, 0) = 1.0;
  f.v2 = f.v1;
  f.lambda1 = RealVector::Ones(1);
  f.lambda2 = RealVector::Ones(1);
  const Matrix v = assemble_eigenvectors(f);
  CHECK(v(0, 0) == Complex(1.0));
  CHECK(v.bottomRows(3).norm() == 0.0);
}

TEST_CASE("assemble_eigenvectors rejects nonpositive scales") {
  HalfSpectralFactors f;
  f.v1 = Matrix::Identity(2, 2);
  f.v2 = Matrix::Identity(2, 2);
  f.lambda1 = RealVector::Ones(2);
  f.lambda2 = RealVector::Ones(2);
  f.lambda1(1) = 0.0;
  CHECK_THROWS_AS(assemble_eigenvectors(f), NonPositiveScale);
  f.lambda1(1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(assemble_eigenvectors(f), NonPositiveScale);
}

TEST_CASE("form-I conditions hold exactly for symmetrized blocks") {
  const BseMatrixI h = from_blocks(random_hermitian(7, 9, 0), random_hermitian(7, 9, 1));
  const Matrix full = realize_full(h);
  const SignatureOperators ops{7};
  const Matrix mh = full.adjoint();
  CHECK((ops.times_j(ops.j_times(mh)) - full).norm() == 0.0);
  CHECK((ops.times_sigma(ops.sigma_times(mh)) - full).norm() == 0.0);
}
