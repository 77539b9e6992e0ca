#pragma once

// Structured solvers for the positive half-spectrum of a form-I BSE matrix,
// plus a dense pencil-based reference solver and the negative-spectrum map.
// All four return eigenvalues ascending with Sigma-orthonormal eigenvectors.

#include "bse/types.hpp"

namespace bse {

/// Square-root approach: S = (A-B)^{1/2}, eigendecomposition of S(A+B)S.
/// The S^{-1} applications are realized as linear solves, never an explicit
/// inverse.
SpectralResult solve_sqrt(const BseMatrixI& h);

/// Cholesky approach: L L^H = A-B, eigendecomposition of L^H (A+B) L.
SpectralResult solve_chol(const BseMatrixI& h);

/// Cholesky+SVD approach: L1 L1^H = A+B, L2 L2^H = A-B, then the singular
/// values of L1^H L2 are the eigenvalues directly (no squaring).
SpectralResult solve_chol_svd(const BseMatrixI& h);

/// Reference oracle on the full 2n-by-2n problem: Cholesky of the definite
/// BSE Hamiltonian Sigma*H = L L^H, Hermitian eigendecomposition of
/// K = L^{-1} Sigma L^{-H}, eigenvalues 1/m, eigenvectors L^{-H} W rescaled
/// to v^H Sigma v = +1. Independent of the product structure the three
/// solvers above exploit.
SpectralResult solve_reference(const BseMatrixI& h);

SpectralResult solve(Method method, const BseMatrixI& h);

/// Mirror spectrum: eigenvalue -lambda_j with eigenvector [0 I; I 0] v_j
/// (halves swapped, no conjugation -- form I). Column order matches `r`.
SpectralResult negative_spectrum(const BseMatrixI& h, const SpectralResult& r);

}  // namespace bse
