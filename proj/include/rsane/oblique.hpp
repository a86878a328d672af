#pragma once

#include "rsane/manifold.hpp"

namespace rsane {

/// Oblique manifold OB(n, p) of n x p matrices with unit-norm columns.
/// Retraction normalizes each column; transport projects columnwise onto the
/// tangent space at the retracted point.
class ObliqueGeometry final : public Manifold {
public:
  ObliqueGeometry(Index n, Index p);

  Index rows() const override { return n_; }
  Index cols() const override { return p_; }

  Matrix retract(const Matrix& X, const Matrix& xi) const override;
  Matrix transport(const Matrix& X, const Matrix& eta, const Matrix& xi) const override;
  Matrix project_tangent(const Matrix& X, const Matrix& V) const override;
  double feasibility_gap(const Matrix& X) const override;
  double tangency_gap(const Matrix& X, const Matrix& Z) const override;

private:
  Index n_;
  Index p_;
};

}  // namespace rsane
