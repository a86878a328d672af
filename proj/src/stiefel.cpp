#include "rsane/stiefel.hpp"

#include "rsane/matrix_ops.hpp"

namespace rsane {

StiefelGeometry::StiefelGeometry(Index n, Index p, Retraction kind) : n_(n), p_(p), kind_(kind) {
  if (n < 1 || p < 1 || p > n) {
    throw DimensionError("StiefelGeometry: need 1 <= p <= n");
  }
}

Matrix StiefelGeometry::retract(const Matrix& X, const Matrix& xi) const {
  check_point_shape(X, "stiefel retract");
  check_same_shape(X, xi, "stiefel retract");
  if (xi.isZero(0.0)) return X;
  const Matrix W = X + xi;
  if (kind_ == Retraction::Qr) {
    try {
      return qf(W);
    } catch (const RankDeficiencyError& e) {
      throw SingularRetractionError(std::string("stiefel retract: ") + e.what());
    }
  }
  return polar_factor(W);
}

Matrix StiefelGeometry::transport(const Matrix& X, const Matrix& eta, const Matrix& xi) const {
  const Matrix Y = retract(X, eta);
  return xi - Y * sym(Y.transpose() * xi);
}

Matrix StiefelGeometry::project_tangent(const Matrix& X, const Matrix& V) const {
  check_point_shape(X, "stiefel project_tangent");
  check_same_shape(X, V, "stiefel project_tangent");
  return V - X * sym(X.transpose() * V);
}

double StiefelGeometry::feasibility_gap(const Matrix& X) const {
  check_point_shape(X, "stiefel feasibility_gap");
  return (X.transpose() * X - Matrix::Identity(p_, p_)).norm();
}

double StiefelGeometry::tangency_gap(const Matrix& X, const Matrix& Z) const {
  check_point_shape(X, "stiefel tangency_gap");
  check_same_shape(X, Z, "stiefel tangency_gap");
  return sym(X.transpose() * Z).norm();
}

}  // namespace rsane
