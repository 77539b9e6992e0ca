#include "bse/gen.hpp"

#include <cmath>
#include <numbers>

namespace bse {

std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + (k + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::mt19937_64 entry_stream(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix64_at(seed, stream));
}

double GaussianStream::next() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // 53-bit uniforms, u1 in (0,1] so the log is finite.
  const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

Complex GaussianStream::next_complex() {
  const double re = next();
  const double im = next();
  return Complex(re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0);
}

Matrix random_unitary(Index n, std::uint64_t seed) {
  if (n < 1) throw InvalidSpec("random_unitary: n must be >= 1");
  GaussianStream g(seed, 0);
  Matrix z(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      z(i, j) = g.next_complex();
    }
  }
  const Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  // Phasing the columns by diag(R)/|diag(R)| makes the distribution Haar.
  for (Index j = 0; j < n; ++j) {
    const Complex r = qr.matrixQR()(j, j);
    const double mag = std::abs(r);
    q.col(j) *= mag > 0.0 ? r / mag : Complex(1.0, 0.0);
  }
  return q;
}

BseMatrixI generate_conditioned(const GeneratorSpec& spec) {
  if (spec.n < 1) throw InvalidSpec("generate_conditioned: n must be >= 1");
  if (!(spec.kappa >= 3.0)) {
    throw InvalidSpec("generate_conditioned: kappa must be >= 3 so the spectrum vector "
                      "is nondecreasing from 1");
  }
  const RealVector d = RealVector::LinSpaced(spec.n, 1.0, spec.kappa / 3.0);
  const Matrix q = random_unitary(spec.n, spec.seed);
  Matrix a = q.adjoint() * d.asDiagonal() * q;
  a = 0.5 * (a + a.adjoint()).eval();
  const Matrix b = 0.5 * a;  // exact halving keeps A+B, A-B exact multiples of A
  return from_blocks(a, b);
}

BseMatrixI generate_random_definite(Index n, std::uint64_t seed, double shift_margin) {
  if (n < 1) throw InvalidSpec("generate_random_definite: n must be >= 1");
  if (!(shift_margin > 0.0)) {
    throw InvalidSpec("generate_random_definite: shift_margin must be positive");
  }
  GaussianStream ga(seed, 0);
  GaussianStream gb(seed, 1);
  Matrix a(n, n), b(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      a(i, j) = ga.next_complex();
      b(i, j) = gb.next_complex();
    }
  }
  a = 0.5 * (a + a.adjoint()).eval();
  b = 0.5 * (b + b.adjoint()).eval();
  // ||M||_2 <= ||M||_1 for Hermitian M, so this shift dominates both A0 and B
  // and certifies A+B, A-B positive definite with margin to spare.
  const double rho = a.cwiseAbs().colwise().sum().maxCoeff() +
                     b.cwiseAbs().colwise().sum().maxCoeff();
  a += (rho + shift_margin) * Matrix::Identity(n, n);
  return from_blocks(a, b);
}

}  // namespace bse
