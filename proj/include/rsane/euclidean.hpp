#pragma once

#include "rsane/manifold.hpp"

namespace rsane {

/// R^{n x p} as a trivial manifold: identity retraction and transport. Used
/// by the Euclidean SANE baseline, where the spectral iteration runs on plain
/// vectors.
class EuclideanGeometry final : public Manifold {
public:
  explicit EuclideanGeometry(Index n, Index p = 1);

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
