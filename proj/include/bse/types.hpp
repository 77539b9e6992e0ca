#pragma once

// Core domain types for dense Bethe-Salpeter eigenvalue problems of form I,
//   H = [ A  B ; -B  -A ],  A = A^H, B = B^H,
// with A+B and A-B Hermitian positive definite.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bse {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative Frobenius tolerance accepted for Hermitian deviation of input blocks.
inline constexpr double kDefaultHermTol = 1e-12;

inline double machine_eps() { return std::numeric_limits<double>::epsilon(); }

// ---------------------------------------------------------------------------
// Error hierarchy. Every failure mode carries enough state to be reported
// without string parsing; the CLI maps each class to a distinct exit code.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch final : public Error {
 public:
  using Error::Error;
};

class NotHermitian final : public Error {
 public:
  NotHermitian(const std::string& what, double relative_deviation)
      : Error(what), relative_deviation_(relative_deviation) {}
  double relative_deviation() const { return relative_deviation_; }

 private:
  double relative_deviation_;
};

/// Which product factor failed the definiteness certificate.
enum class Block { M1, M2, Full };

inline const char* block_name(Block b) {
  switch (b) {
    case Block::M1: return "M1 = A+B";
    case Block::M2: return "M2 = A-B";
    default: return "Sigma*H";
  }
}

class NotDefinite final : public Error {
 public:
  NotDefinite(Block which, const std::string& what) : Error(what), which_(which) {}
  Block which() const { return which_; }

 private:
  Block which_;
};

class NotPositiveDefinite final : public Error {
 public:
  NotPositiveDefinite(const std::string& what, Index pivot_index)
      : Error(what), pivot_index_(pivot_index) {}
  /// Zero-based index of the first nonpositive pivot (or eigenvalue).
  Index pivot_index() const { return pivot_index_; }

 private:
  Index pivot_index_;
};

class ConvergenceFailure final : public Error {
 public:
  using Error::Error;
};

class SingularFactor final : public Error {
 public:
  using Error::Error;
};

class NonPositiveScale final : public Error {
 public:
  using Error::Error;
};

class OddDimension final : public Error {
 public:
  using Error::Error;
};

class LengthMismatch final : public Error {
 public:
  using Error::Error;
};

class InvalidSpec final : public Error {
 public:
  using Error::Error;
};

class ParseError final : public Error {
 public:
  ParseError(const std::string& what, long line) : Error(what), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

class IoError final : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------

enum class Method { Sqrt, Chol, CholSvd, Reference };

const char* method_name(Method m);
Method method_from_name(const std::string& name);

/// Stable class name of a domain error ("NotDefinite", "ParseError", ...).
const char* error_kind(const Error& e);

/// Validated pair (A, B) of Hermitian n-by-n blocks; immutable after
/// construction through from_blocks().
class BseMatrixI {
 public:
  const Matrix& a() const { return a_; }
  const Matrix& b() const { return b_; }
  Index n() const { return a_.rows(); }

 private:
  BseMatrixI(Matrix a, Matrix b) : a_(std::move(a)), b_(std::move(b)) {}
  friend BseMatrixI from_blocks(const Matrix&, const Matrix&, double);

  Matrix a_;
  Matrix b_;
};

/// The Hermitian positive definite product factors M1 = A+B, M2 = A-B.
struct ProductPair {
  Matrix m1;
  Matrix m2;
};

/// Half-size left/right factor vectors with their cross scaling scalars:
/// M1 v2 = lambda1 v1, M2 v1 = lambda2 v2, diag(v2^H v1) = 1 columnwise,
/// and lambda1*lambda2 = lambda^2 per column.
struct HalfSpectralFactors {
  Matrix v1;
  Matrix v2;
  RealVector lambda1;
  RealVector lambda2;
};

/// Positive half of the spectrum with Sigma-orthonormal eigenvectors.
struct SpectralResult {
  RealVector lambda;  // ascending
  Matrix v;           // 2n x k, columns scaled so V^H Sigma V = I
  Method method = Method::Reference;
  /// Columns whose eigenvalue fell below eps*max and was clamped before the
  /// Lambda^{-1/2} scalings; values there carry no accuracy guarantee.
  std::vector<Index> near_singular;
};

/// Validates shapes and Hermitian deviation, symmetrizes each block within
/// `tol` (relative Frobenius), and returns the domain object.
BseMatrixI from_blocks(const Matrix& a, const Matrix& b, double tol = kDefaultHermTol);

/// Materializes the dense 2n-by-2n matrix [ A B ; -B -A ].
Matrix realize_full(const BseMatrixI& h);

/// Forms (A+B, A-B) and certifies positive definiteness of both by Cholesky.
/// Throws NotDefinite if the BSE Hamiltonian is not positive definite.
ProductPair product_pair(const BseMatrixI& h);

/// Assembles full-size eigenvectors from half-size factors:
/// column j is Q * [ v1_j (l1/l2)^{1/4} ; v2_j (l2/l1)^{1/4} ] with
/// Q = 1/2 [ I I ; -I I ], i.e. top = (x+y)/2, bottom = (y-x)/2.
Matrix assemble_eigenvectors(const HalfSpectralFactors& f);

}  // namespace bse
