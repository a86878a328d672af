#include "rsane/manifold.hpp"

namespace rsane {

double Manifold::inner(const Matrix& X, const Matrix& xi, const Matrix& eta) const {
  check_point_shape(X, "inner");
  check_same_shape(X, xi, "inner");
  check_same_shape(xi, eta, "inner");
  return xi.cwiseProduct(eta).sum();
}

void Manifold::check_point_shape(const Matrix& X, const char* where) const {
  if (X.rows() != rows() || X.cols() != cols()) {
    throw DimensionError(std::string(where) + ": point is " + std::to_string(X.rows()) + "x" +
                         std::to_string(X.cols()) + ", geometry expects " + std::to_string(rows()) +
                         "x" + std::to_string(cols()));
  }
}

Matrix scaled_transport(const Manifold& geom, const Matrix& X, const Matrix& eta, const Matrix& xi) {
  Matrix carried = geom.transport(X, eta, xi);
  const double out_norm = carried.norm();
  const double in_norm = xi.norm();
  if (out_norm > in_norm) {
    carried *= in_norm / out_norm;
  }
  return carried;
}

}  // namespace rsane
