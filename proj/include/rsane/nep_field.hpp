#pragma once

#include "rsane/vector_field.hpp"

#include <Eigen/SparseCholesky>

namespace rsane {

/// Density-coupled nonlinear eigenvalue problem on the Stiefel manifold:
///   H(X) = L + mu * Diag(L^+ rho(X)),   rho(X) = diag(X X^T),
///   F(X) = H(X) X - X X^T H(X) X.
/// L is a symmetric discrete Laplacian; the default constructor builds the
/// 1-D Dirichlet Laplacian (tridiagonal 2, -1), which is nonsingular, so the
/// pseudo-inverse application L^+ rho is a factored linear solve per
/// evaluation rather than a stored inverse.
class NepField final : public VectorField {
public:
  NepField(Index n, double mu);
  NepField(SparseMatrix laplacian, double mu);

  Index size() const { return L_.rows(); }
  double mu() const { return mu_; }
  const SparseMatrix& laplacian() const { return L_; }

  Matrix eval(const Matrix& X) const override;

  /// Dense H(X); intended for diagnostics at small n.
  Matrix H(const Matrix& X) const;

  /// Eigenvalue block X^T H(X) X of the optimality system.
  Matrix lambda_block(const Matrix& X) const;

private:
  Vector density_potential(const Matrix& X) const;  // L^+ rho(X)

  SparseMatrix L_;
  Eigen::SimplicialLDLT<SparseMatrix> L_solver_;
  double mu_;
};

/// n x n 1-D Dirichlet Laplacian (2 on the diagonal, -1 off).
SparseMatrix dirichlet_laplacian_1d(Index n);

}  // namespace rsane
