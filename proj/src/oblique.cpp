#include "rsane/oblique.hpp"

namespace rsane {

ObliqueGeometry::ObliqueGeometry(Index n, Index p) : n_(n), p_(p) {
  if (n < 1 || p < 1) throw DimensionError("ObliqueGeometry: need n, p >= 1");
}

Matrix ObliqueGeometry::retract(const Matrix& X, const Matrix& xi) const {
  check_point_shape(X, "oblique retract");
  check_same_shape(X, xi, "oblique retract");
  if (xi.isZero(0.0)) return X;
  Matrix Y = X + xi;
  for (Index j = 0; j < p_; ++j) {
    const double norm = Y.col(j).norm();
    if (norm == 0.0) {
      throw SingularRetractionError("oblique retract: column " + std::to_string(j) +
                                    " of X + xi is zero");
    }
    Y.col(j) /= norm;
  }
  return Y;
}

Matrix ObliqueGeometry::transport(const Matrix& X, const Matrix& eta, const Matrix& xi) const {
  const Matrix Y = retract(X, eta);
  Matrix carried = xi;
  for (Index j = 0; j < p_; ++j) {
    carried.col(j) -= Y.col(j).dot(xi.col(j)) * Y.col(j);
  }
  return carried;
}

Matrix ObliqueGeometry::project_tangent(const Matrix& X, const Matrix& V) const {
  check_point_shape(X, "oblique project_tangent");
  check_same_shape(X, V, "oblique project_tangent");
  Matrix Z = V;
  for (Index j = 0; j < p_; ++j) {
    Z.col(j) -= X.col(j).dot(V.col(j)) * X.col(j);
  }
  return Z;
}

double ObliqueGeometry::feasibility_gap(const Matrix& X) const {
  check_point_shape(X, "oblique feasibility_gap");
  double sq = 0.0;
  for (Index j = 0; j < p_; ++j) {
    const double d = X.col(j).squaredNorm() - 1.0;
    sq += d * d;
  }
  return std::sqrt(sq);
}

double ObliqueGeometry::tangency_gap(const Matrix& X, const Matrix& Z) const {
  check_point_shape(X, "oblique tangency_gap");
  check_same_shape(X, Z, "oblique tangency_gap");
  double sq = 0.0;
  for (Index j = 0; j < p_; ++j) {
    const double d = X.col(j).dot(Z.col(j));
    sq += d * d;
  }
  return std::sqrt(sq);
}

}  // namespace rsane
