#include "rsane/sphere.hpp"

namespace rsane {

SphereGeometry::SphereGeometry(Index n) : n_(n) {
  if (n < 1) throw DimensionError("SphereGeometry: n must be >= 1");
}

Matrix SphereGeometry::retract(const Matrix& x, const Matrix& xi) const {
  check_point_shape(x, "sphere retract");
  check_same_shape(x, xi, "sphere retract");
  if (xi.isZero(0.0)) return x;
  Matrix y = x + xi;
  const double norm = y.norm();
  if (norm == 0.0) {
    throw SingularRetractionError("sphere retract: x + xi = 0 cannot be normalized");
  }
  return y / norm;
}

Matrix SphereGeometry::transport(const Matrix& x, const Matrix& eta, const Matrix& xi) const {
  const Matrix y = retract(x, eta);
  return xi - y * (y.transpose() * xi);
}

Matrix SphereGeometry::project_tangent(const Matrix& x, const Matrix& V) const {
  check_point_shape(x, "sphere project_tangent");
  check_same_shape(x, V, "sphere project_tangent");
  return V - x * (x.transpose() * V);
}

double SphereGeometry::feasibility_gap(const Matrix& x) const {
  check_point_shape(x, "sphere feasibility_gap");
  return std::abs(x.norm() - 1.0);
}

double SphereGeometry::tangency_gap(const Matrix& x, const Matrix& z) const {
  check_point_shape(x, "sphere tangency_gap");
  check_same_shape(x, z, "sphere tangency_gap");
  return std::abs((x.transpose() * z)(0, 0));
}

}  // namespace rsane
