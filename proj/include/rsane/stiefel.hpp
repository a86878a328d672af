#pragma once

#include "rsane/manifold.hpp"

namespace rsane {

/// Stiefel manifold St(n, p) of n x p matrices with orthonormal columns.
/// Two retractions are available: the QR orthogonal factor and the polar
/// factor. Transport is orthogonal projection onto the tangent space at the
/// retracted point (non-expansive).
class StiefelGeometry final : public Manifold {
public:
  enum class Retraction { Qr, Polar };

  StiefelGeometry(Index n, Index p, Retraction kind = Retraction::Qr);

  Index rows() const override { return n_; }
  Index cols() const override { return p_; }
  Retraction retraction_kind() const { return kind_; }

  Matrix retract(const Matrix& X, const Matrix& xi) const override;
  Matrix transport(const Matrix& X, const Matrix& eta, const Matrix& xi) const override;
  Matrix project_tangent(const Matrix& X, const Matrix& V) const override;
  double feasibility_gap(const Matrix& X) const override;
  double tangency_gap(const Matrix& X, const Matrix& Z) const override;

private:
  Index n_;
  Index p_;
  Retraction kind_;
};

}  // namespace rsane
