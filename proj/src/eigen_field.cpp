#include "rsane/eigen_field.hpp"

namespace rsane {

namespace {

SparseMatrix symmetrized(const SparseMatrix& A) {
  if (A.rows() != A.cols()) throw DimensionError("EigenField: matrix must be square");
  SparseMatrix At = SparseMatrix(A.transpose());
  SparseMatrix S = 0.5 * (A + At);
  S.makeCompressed();
  return S;
}

}  // namespace

EigenField::EigenField(SparseMatrix A) : A_(symmetrized(A)) {}

EigenField::EigenField(const Matrix& A) : A_(symmetrized(A.sparseView())) {}

Matrix EigenField::eval(const Matrix& x) const {
  const Vector v = A_ * x.col(0);
  const double r = x.col(0).dot(v);
  return v - r * x.col(0);
}

double EigenField::rayleigh(const Vector& x) const {
  const double xx = x.squaredNorm();
  if (xx == 0.0) throw std::invalid_argument("EigenField::rayleigh: x must be nonzero");
  return x.dot(A_ * x) / xx;
}

Vector EigenField::euclidean(const Vector& x) const {
  const double xx = x.squaredNorm();
  if (xx == 0.0) throw std::invalid_argument("EigenField::euclidean: x must be nonzero");
  const Vector v = A_ * x;
  return v - (x.dot(v) / xx) * x;
}

double EigenField::exact_sigma(const Matrix& x, const Matrix& F_x) const {
  // Jacobian action of F at x along z: A z - 2 (x^T A z) x - (x^T A x) z.
  const Vector xv = x.col(0);
  const Vector fv = F_x.col(0);
  const Vector ax = A_ * xv;
  const Vector af = A_ * fv;
  const double r = xv.dot(ax);
  return fv.dot(af) - 2.0 * xv.dot(af) * xv.dot(fv) - r * fv.squaredNorm();
}

Matrix EigenField::merit_gradient(const Matrix& x, const Matrix& F_x) const {
  const Vector xv = x.col(0);
  const Vector fv = F_x.col(0);
  const Vector ax = A_ * xv;
  const double r = xv.dot(ax);
  // Adjoint Jacobian action at F, projected onto the tangent space at x.
  Vector g = A_ * fv - 2.0 * ax * xv.dot(fv) - r * fv;
  g -= xv * xv.dot(g);
  return g;
}

}  // namespace rsane
