#pragma once

#include "rsane/manifold.hpp"

namespace rsane {

/// Unit sphere S^{n-1}, points stored as n x 1 matrices. Retraction by
/// normalization, transport by orthogonal projection onto the tangent space
/// at the target point (non-expansive).
class SphereGeometry final : public Manifold {
public:
  explicit SphereGeometry(Index n);

  Index rows() const override { return n_; }
  Index cols() const override { return 1; }

  Matrix retract(const Matrix& x, const Matrix& xi) const override;
  Matrix transport(const Matrix& x, const Matrix& eta, const Matrix& xi) const override;
  Matrix project_tangent(const Matrix& x, const Matrix& V) const override;
  double feasibility_gap(const Matrix& x) const override;
  double tangency_gap(const Matrix& x, const Matrix& z) const override;

private:
  Index n_;
};

}  // namespace rsane
