#pragma once

#include <Eigen/Dense>

namespace anomint {

/// Eigenpairs with eigenvalues ascending and eigenvectors in matching columns.
struct SymmetricEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// Cyclic Jacobi rotations on a real symmetric matrix. Deterministic: rows are swept in
/// fixed order and the output is sorted ascending with ties kept in index order.
SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& symmetric, int max_sweeps = 100);

struct HermitianEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;  // empty unless requested
};

/// Dense Hermitian eigensolver: Householder reduction to a real symmetric tridiagonal
/// matrix followed by implicit-shift QL. Throws NonHermitian if the input deviates from
/// its adjoint by more than 1e-12 relative to its max-norm.
HermitianEigen hermitian_eigen(const Eigen::MatrixXcd& h, bool want_vectors);

/// Eigenvalues of a real symmetric tridiagonal matrix (diag, off-diag of length n-1) by
/// implicit QL; when z is non-null the plane rotations are accumulated into its columns.
void tridiagonal_ql(Eigen::VectorXd& diag, Eigen::VectorXd& offdiag, Eigen::MatrixXd* z);

/// exp(m) by scaling and squaring with a truncated Taylor series.
Eigen::MatrixXd expm(const Eigen::MatrixXd& m);

double max_abs(const Eigen::MatrixXd& m);
double max_abs(const Eigen::MatrixXcd& m);

}  // namespace anomint
