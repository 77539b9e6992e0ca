#include "bse/verify.hpp"

#include <algorithm>
#include <cmath>

namespace bse {

namespace {

Index half_dimension(Index rows, const char* who) {
  if (rows % 2 != 0) {
    throw OddDimension(std::string(who) + ": row dimension must be even");
  }
  return rows / 2;
}

}  // namespace

Matrix SignatureOperators::j_times(const Matrix& x) const {
  Matrix y(x.rows(), x.cols());
  y.topRows(n) = x.bottomRows(n);
  y.bottomRows(n) = -x.topRows(n);
  return y;
}

Matrix SignatureOperators::times_j(const Matrix& x) const {
  Matrix y(x.rows(), x.cols());
  y.leftCols(n) = -x.rightCols(n);
  y.rightCols(n) = x.leftCols(n);
  return y;
}

Matrix SignatureOperators::sigma_times(const Matrix& x) const {
  Matrix y = x;
  y.bottomRows(n) *= -1.0;
  return y;
}

Matrix SignatureOperators::times_sigma(const Matrix& x) const {
  Matrix y = x;
  y.rightCols(n) *= -1.0;
  return y;
}

bool check_form1(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) throw DimensionMismatch("check_form1: matrix must be square");
  const SignatureOperators ops{half_dimension(m.rows(), "check_form1")};
  const double norm = m.norm();
  const Matrix mh = m.adjoint();
  const double dev_j = (ops.times_j(ops.j_times(mh)) - m).norm();
  const double dev_sigma = (ops.times_sigma(ops.sigma_times(mh)) - m).norm();
  return dev_j <= tol * norm && dev_sigma <= tol * norm;
}

bool check_form2(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) throw DimensionMismatch("check_form2: matrix must be square");
  const SignatureOperators ops{half_dimension(m.rows(), "check_form2")};
  const double norm = m.norm();
  const Matrix mt = m.transpose();  // no conjugation in the J condition
  const Matrix mh = m.adjoint();
  const double dev_j = (ops.times_j(ops.j_times(mt)) - m).norm();
  const double dev_sigma = (ops.times_sigma(ops.sigma_times(mh)) - m).norm();
  return dev_j <= tol * norm && dev_sigma <= tol * norm;
}

double sigma_orthogonality_error(const Matrix& v) {
  const SignatureOperators ops{half_dimension(v.rows(), "sigma_orthogonality_error")};
  const Matrix gram = v.adjoint() * ops.sigma_times(v);
  return (gram - Matrix::Identity(v.cols(), v.cols())).norm();
}

RealVector residual(const BseMatrixI& h, const SpectralResult& r) {
  const Index n = h.n();
  const Index k = r.v.cols();
  if (r.v.rows() != 2 * n || r.lambda.size() != k) {
    throw DimensionMismatch("residual: result does not conform to the matrix");
  }
  const Matrix top = r.v.topRows(n);
  const Matrix bottom = r.v.bottomRows(n);
  Matrix hv(2 * n, k);
  hv.topRows(n) = h.a() * top + h.b() * bottom;
  hv.bottomRows(n) = -(h.b() * top) - h.a() * bottom;

  const double norm_h = std::sqrt(2.0 * h.a().squaredNorm() + 2.0 * h.b().squaredNorm());
  RealVector out(k);
  for (Index j = 0; j < k; ++j) {
    out(j) = (hv.col(j) - r.lambda(j) * r.v.col(j)).norm() / norm_h;
  }
  return out;
}

bool check_pairing(const RealVector& pos, const RealVector& neg, double tol) {
  if (pos.size() != neg.size()) {
    throw LengthMismatch("check_pairing: spectra have different lengths");
  }
  RealVector p = pos;
  RealVector m = -neg;
  std::sort(p.begin(), p.end());
  std::sort(m.begin(), m.end());
  const double scale = pos.size() > 0 ? pos.cwiseAbs().maxCoeff() : 0.0;
  return ((p - m).cwiseAbs().array() <= tol * scale).all();
}

double predicted_error(const ErrorModelInput& in, bool squared_method) {
  if (squared_method) {
    return in.eps * (in.norm_h / in.s_lambda) *
           std::min(in.norm_h / in.lambda, 1.0 / std::sqrt(in.eps));
  }
  return in.eps * in.norm_h / in.s_lambda;
}

}  // namespace bse
