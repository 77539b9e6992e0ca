#pragma once

// Structure predicates and quantitative diagnostics: the two scalar-product
// characterizations of BSE forms, residuals, Sigma-orthogonality deviation,
// spectral pairing, and the first-order error predictor.
//
// Everything here is implemented with plain Eigen arithmetic, independent of
// the factorization backend it is used to check.

#include "bse/types.hpp"

namespace bse {

/// J = [0 I; -I 0] and Sigma = diag(I, -I), applied as operators on
/// block-partitioned matrices; never materialized.
struct SignatureOperators {
  Index n;  // half dimension

  Matrix j_times(const Matrix& x) const;      // J * x
  Matrix times_j(const Matrix& x) const;      // x * J
  Matrix sigma_times(const Matrix& x) const;  // Sigma * x
  Matrix times_sigma(const Matrix& x) const;  // x * Sigma
};

/// True iff m is skew-adjoint for the sesquilinear J-form and self-adjoint
/// for the sesquilinear Sigma-form: J m^H J = m and Sigma m^H Sigma = m,
/// both within tol * ||m||_F.
bool check_form1(const Matrix& m, double tol);

/// Form-II variant: the J condition uses the plain transpose, J m^T J = m,
/// the Sigma condition is unchanged.
bool check_form2(const Matrix& m, double tol);

/// || V^H Sigma V - I ||_F, the deviation from Sigma-orthonormality.
double sigma_orthogonality_error(const Matrix& v);

/// Per-column || H v_j - lambda_j v_j ||_2 / ||H||_F.
RealVector residual(const BseMatrixI& h, const SpectralResult& r);

/// True iff sorted(pos) and sorted(-neg) agree elementwise within
/// tol * max|pos|.
bool check_pairing(const RealVector& pos, const RealVector& neg, double tol);

/// Inputs of the first-order eigenvalue error model.
struct ErrorModelInput {
  double norm_h;         // ||H||_2 (largest eigenvalue is exact here)
  double lambda;         // > 0, the eigenvalue of interest
  double s_lambda = 1.0; // eigenvalue condition number, in (0, 1]
  double eps = machine_eps();
};

/// Predicted |lambda - computed| for a backward-stable method. Squared-method
/// mode models eigenvalues recovered as square roots of computed squares:
///   eps * (||H||/s) * min(||H||/lambda, 1/sqrt(eps));
/// direct mode is eps * ||H|| / s.
double predicted_error(const ErrorModelInput& in, bool squared_method);

}  // namespace bse
