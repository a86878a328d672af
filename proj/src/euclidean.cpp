#include "rsane/euclidean.hpp"

namespace rsane {

EuclideanGeometry::EuclideanGeometry(Index n, Index p) : n_(n), p_(p) {
  if (n < 1 || p < 1) throw DimensionError("EuclideanGeometry: need n, p >= 1");
}

Matrix EuclideanGeometry::retract(const Matrix& X, const Matrix& xi) const {
  check_point_shape(X, "euclidean retract");
  check_same_shape(X, xi, "euclidean retract");
  if (xi.isZero(0.0)) return X;
  return X + xi;
}

Matrix EuclideanGeometry::transport(const Matrix& X, const Matrix& eta, const Matrix& xi) const {
  check_point_shape(X, "euclidean transport");
  check_same_shape(X, eta, "euclidean transport");
  check_same_shape(X, xi, "euclidean transport");
  return xi;
}

Matrix EuclideanGeometry::project_tangent(const Matrix& X, const Matrix& V) const {
  check_point_shape(X, "euclidean project_tangent");
  check_same_shape(X, V, "euclidean project_tangent");
  return V;
}

double EuclideanGeometry::feasibility_gap(const Matrix& X) const {
  check_point_shape(X, "euclidean feasibility_gap");
  return 0.0;
}

double EuclideanGeometry::tangency_gap(const Matrix& X, const Matrix& Z) const {
  check_point_shape(X, "euclidean tangency_gap");
  check_same_shape(X, Z, "euclidean tangency_gap");
  return 0.0;
}

}  // namespace rsane
