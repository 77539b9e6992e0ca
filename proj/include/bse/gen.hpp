#pragma once

// Deterministic synthetic test-matrix generators. All randomness flows
// through named, portable primitives (splitmix64 -> mt19937_64 -> explicit
// Box-Muller), so identical seeds give bit-identical matrices everywhere the
// same floating-point semantics hold.

#include "bse/types.hpp"

#include <random>

namespace bse {

/// Recipe for the conditioned family: cond(H) = kappa, positive spectrum
/// exactly (sqrt(3)/2) * linspace(1, kappa/3, n).
struct GeneratorSpec {
  Index n = 0;
  double kappa = 3.0;  // >= 3
  std::uint64_t seed = 0;
};

/// k-th value of the splitmix64 sequence started at `seed`.
std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t k);

/// Independent per-block RNG stream (stream 0 = block A, stream 1 = block B).
std::mt19937_64 entry_stream(std::uint64_t seed, std::uint64_t stream);

/// Standard normal samples via Box-Muller on explicit 53-bit uniforms.
/// Not std::normal_distribution: that one is implementation-defined.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t stream)
      : engine_(entry_stream(seed, stream)) {}

  double next();
  /// Standard complex Gaussian (unit total variance).
  Complex next_complex();

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Haar-distributed unitary: complex Gaussian fill, QR, columns phased by the
/// diagonal of the triangular factor.
Matrix random_unitary(Index n, std::uint64_t seed);

/// A = Q^H D Q, B = A/2 with D = diag(linspace(1, kappa/3, n)); the realized
/// H has condition number kappa and exact positive spectrum (sqrt(3)/2) d.
BseMatrixI generate_conditioned(const GeneratorSpec& spec);

/// Dense random Hermitian blocks with the diagonal of A shifted by
/// ||A||_1 + ||B||_1 + shift_margin, which makes A+B and A-B positive
/// definite by construction (no retry loop).
BseMatrixI generate_random_definite(Index n, std::uint64_t seed, double shift_margin = 1.0);

}  // namespace bse
