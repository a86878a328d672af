#pragma once

#include "rsane/vector_field.hpp"

namespace rsane {

/// Symmetric eigenvalue problem as a tangent vector field on the unit sphere:
/// F(x) = A x - (x^T A x) x, which vanishes exactly at unit eigenvectors of A.
/// The matrix is symmetrized on construction. Exact derivative capabilities
/// are available because the Jacobian action of F is two matrix-vector
/// products.
class EigenField final : public VectorField {
public:
  explicit EigenField(SparseMatrix A);
  explicit EigenField(const Matrix& A);

  Index size() const { return A_.rows(); }
  const SparseMatrix& matrix() const { return A_; }

  Matrix eval(const Matrix& x) const override;

  /// Rayleigh quotient x^T A x / x^T x; x must be nonzero.
  double rayleigh(const Vector& x) const;

  /// Unconstrained residual G(x) = A x - rayleigh(x) x used by the Euclidean
  /// baseline; coincides with eval on the sphere.
  Vector euclidean(const Vector& x) const;

  bool has_exact_sigma() const override { return true; }
  double exact_sigma(const Matrix& x, const Matrix& F_x) const override;

  bool has_merit_gradient() const override { return true; }
  Matrix merit_gradient(const Matrix& x, const Matrix& F_x) const override;

private:
  SparseMatrix A_;
};

}  // namespace rsane
