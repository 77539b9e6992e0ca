#include "bse/types.hpp"

#include "bse/backend.hpp"

#include <cmath>
#include <sstream>

namespace bse {

const char* method_name(Method m) {
  switch (m) {
    case Method::Sqrt: return "sqrt";
    case Method::Chol: return "chol";
    case Method::CholSvd: return "chol-svd";
    case Method::Reference: return "reference";
  }
  return "unknown";
}

Method method_from_name(const std::string& name) {
  if (name == "sqrt") return Method::Sqrt;
  if (name == "chol") return Method::Chol;
  if (name == "chol-svd" || name == "cholsvd") return Method::CholSvd;
  if (name == "reference") return Method::Reference;
  throw InvalidSpec("unknown method name: " + name);
}

const char* error_kind(const Error& e) {
  if (dynamic_cast<const DimensionMismatch*>(&e)) return "DimensionMismatch";
  if (dynamic_cast<const NotHermitian*>(&e)) return "NotHermitian";
  if (dynamic_cast<const NotDefinite*>(&e)) return "NotDefinite";
  if (dynamic_cast<const NotPositiveDefinite*>(&e)) return "NotPositiveDefinite";
  if (dynamic_cast<const ConvergenceFailure*>(&e)) return "ConvergenceFailure";
  if (dynamic_cast<const SingularFactor*>(&e)) return "SingularFactor";
  if (dynamic_cast<const NonPositiveScale*>(&e)) return "NonPositiveScale";
  if (dynamic_cast<const OddDimension*>(&e)) return "OddDimension";
  if (dynamic_cast<const LengthMismatch*>(&e)) return "LengthMismatch";
  if (dynamic_cast<const InvalidSpec*>(&e)) return "InvalidSpec";
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const IoError*>(&e)) return "IoError";
  return "Error";
}

namespace {

// Symmetrizes one block after checking its relative Hermitian deviation.
Matrix validated_hermitian(const Matrix& m, double tol, const char* label) {
  const double norm = m.norm();
  const double dev = (m - m.adjoint()).norm();
  if (dev > tol * norm) {
    std::ostringstream os;
    os << "block " << label << " is not Hermitian: relative deviation "
       << (norm > 0 ? dev / norm : dev) << " exceeds tolerance " << tol;
    throw NotHermitian(os.str(), norm > 0 ? dev / norm : dev);
  }
  return 0.5 * (m + m.adjoint());
}

}  // namespace

BseMatrixI from_blocks(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != a.cols() || b.rows() != b.cols()) {
    throw DimensionMismatch("blocks must be square");
  }
  if (a.rows() != b.rows()) {
    std::ostringstream os;
    os << "block dimensions differ: A is " << a.rows() << "x" << a.cols() << ", B is "
       << b.rows() << "x" << b.cols();
    throw DimensionMismatch(os.str());
  }
  if (a.rows() < 1) {
    throw DimensionMismatch("blocks must be at least 1x1");
  }
  return BseMatrixI(validated_hermitian(a, tol, "A"), validated_hermitian(b, tol, "B"));
}

Matrix realize_full(const BseMatrixI& h) {
  const Index n = h.n();
  Matrix full(2 * n, 2 * n);
  full.topLeftCorner(n, n) = h.a();
  full.topRightCorner(n, n) = h.b();
  full.bottomLeftCorner(n, n) = -h.b();
  full.bottomRightCorner(n, n) = -h.a();
  return full;
}

ProductPair product_pair(const BseMatrixI& h) {
  ProductPair pair{h.a() + h.b(), h.a() - h.b()};
  try {
    cholesky_lower(pair.m1);
  } catch (const NotPositiveDefinite& e) {
    throw NotDefinite(Block::M1, std::string("A+B is not positive definite: ") + e.what());
  }
  try {
    cholesky_lower(pair.m2);
  } catch (const NotPositiveDefinite& e) {
    throw NotDefinite(Block::M2, std::string("A-B is not positive definite: ") + e.what());
  }
  return pair;
}

Matrix assemble_eigenvectors(const HalfSpectralFactors& f) {
  const Index n = f.v1.rows();
  const Index k = f.v1.cols();
  if (f.v2.rows() != n || f.v2.cols() != k || f.lambda1.size() != k ||
      f.lambda2.size() != k) {
    throw DimensionMismatch("factor shapes do not conform");
  }
  for (Index j = 0; j < k; ++j) {
    if (!(f.lambda1(j) > 0.0) || !(f.lambda2(j) > 0.0) ||
        !std::isfinite(f.lambda1(j)) || !std::isfinite(f.lambda2(j))) {
      std::ostringstream os;
      os << "scaling factor for column " << j << " is not a positive finite real";
      throw NonPositiveScale(os.str());
    }
  }

  const Eigen::ArrayXd scale1 = (f.lambda1.array() / f.lambda2.array()).pow(0.25);
  const Eigen::ArrayXd scale2 = (f.lambda2.array() / f.lambda1.array()).pow(0.25);
  const Matrix x = f.v1 * scale1.matrix().asDiagonal();
  const Matrix y = f.v2 * scale2.matrix().asDiagonal();

  Matrix v(2 * n, k);
  v.topRows(n) = 0.5 * (x + y);
  v.bottomRows(n) = 0.5 * (y - x);
  return v;
}

}  // namespace bse
