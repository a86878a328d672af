#pragma once

#include "rsane/types.hpp"

namespace rsane {

/// Geometry primitives for an embedded matrix manifold. Points and tangent
/// vectors are plain n x p dense matrices; the caller keeps track of which
/// point a tangent vector belongs to, and tangents at different points are
/// only ever combined through transport().
///
/// All operations are pure and geometries hold no mutable state, so a single
/// instance can be shared freely across threads.
class Manifold {
public:
  virtual ~Manifold() = default;

  virtual Index rows() const = 0;
  virtual Index cols() const = 0;

  /// Riemannian metric at X. The default is the trace inner product
  /// inherited from the ambient space, which is the metric used by every
  /// geometry shipped here.
  virtual double inner(const Matrix& X, const Matrix& xi, const Matrix& eta) const;

  /// Maps a tangent vector at X back onto the manifold.
  virtual Matrix retract(const Matrix& X, const Matrix& xi) const = 0;

  /// Carries xi from the tangent space at X to the one at retract(X, eta).
  virtual Matrix transport(const Matrix& X, const Matrix& eta, const Matrix& xi) const = 0;

  /// Orthogonal projection of an ambient matrix V onto the tangent space at X.
  virtual Matrix project_tangent(const Matrix& X, const Matrix& V) const = 0;

  /// How far X is from satisfying the manifold constraint (0 when feasible).
  virtual double feasibility_gap(const Matrix& X) const = 0;

  /// How far Z is from the tangent space at X (0 when tangent).
  virtual double tangency_gap(const Matrix& X, const Matrix& Z) const = 0;

protected:
  void check_point_shape(const Matrix& X, const char* where) const;
};

/// transport(), post-scaled so the output norm never exceeds ||xi||. When the
/// underlying transport returns zero for a nonzero xi the zero tangent is
/// returned unchanged.
Matrix scaled_transport(const Manifold& geom, const Matrix& X, const Matrix& eta, const Matrix& xi);

}  // namespace rsane
