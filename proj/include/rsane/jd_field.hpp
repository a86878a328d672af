#pragma once

#include "rsane/vector_field.hpp"

#include <vector>

namespace rsane {

/// Joint diagonalization on the oblique manifold. The field is the Riemannian
/// gradient of
///   cost(X) = sum_i || off(X^T C_i X) ||_F^2
/// for given symmetric matrices C_i:
///   F(X) = sum_i 4 C_i X off(X^T C_i X),
/// projected columnwise onto the tangent space so the tangency invariant
/// holds in floating point. The C_i are symmetrized on construction.
class JdField final : public VectorField {
public:
  explicit JdField(std::vector<Matrix> matrices);

  Index size() const { return n_; }
  int count() const { return static_cast<int>(C_.size()); }
  const std::vector<Matrix>& matrices() const { return C_; }

  Matrix eval(const Matrix& X) const override;

  /// Sum of squared off-diagonal energy of the congruences X^T C_i X.
  double cost(const Matrix& X) const;

private:
  std::vector<Matrix> C_;
  Index n_ = 0;
};

}  // namespace rsane
