#pragma once

#include <utility>
#include <vector>

#include "consensus/matrix.hpp"

namespace consensus {

/// Real eigenvalues of a symmetric matrix, sorted ascending.
struct Spectrum {
  std::vector<double> values;
  int size() const { return static_cast<int>(values.size()); }
};

/// Full spectrum of a symmetric matrix via cyclic Jacobi rotations.
/// Converged when the off-diagonal Frobenius mass drops below
/// tol * ||m||_F; throws on non-convergence after the sweep bound.
Spectrum sym_eigenvalues(const SymMatrix& m, double tol = 1e-12);

/// (lambda_2, lambda_N): smallest and largest eigenvalue above zero_tol.
/// zero_tol < 0 selects the default 1e-9 * max(1, lambda_max). Throws if more
/// than one eigenvalue sits below the threshold (disconnected graph) or the
/// spectrum is empty.
std::pair<double, double> extreme_nonzero(const Spectrum& s, double zero_tol = -1.0);

/// Second largest eigenvalue modulus of a symmetric row-stochastic matrix:
/// max |mu| after removing one copy of the eigenvalue 1. Throws if no
/// eigenvalue lies within 1e-9 of 1.
double rho_s_weight(const SymMatrix& w);

/// All eigenvalues of a dense real square matrix: balance, Householder
/// Hessenberg reduction, Francis double-shift QR. Order is unspecified.
std::vector<cdouble> general_eigenvalues(Matrix m);

/// Moduli of general_eigenvalues, sorted descending.
std::vector<double> general_eigen_moduli(const Matrix& m);

}  // namespace consensus
