#include "rsane/jd_field.hpp"

#include "rsane/matrix_ops.hpp"

namespace rsane {

JdField::JdField(std::vector<Matrix> matrices) : C_(std::move(matrices)) {
  if (C_.empty()) throw std::invalid_argument("JdField: need at least one matrix");
  n_ = C_.front().rows();
  for (auto& C : C_) {
    if (C.rows() != n_ || C.cols() != n_) {
      throw DimensionError("JdField: all matrices must be square of the same size");
    }
    C = sym(C);
  }
}

Matrix JdField::eval(const Matrix& X) const {
  if (X.rows() != n_) throw DimensionError("JdField::eval: point has wrong row count");
  Matrix G = Matrix::Zero(X.rows(), X.cols());
  for (const Matrix& C : C_) {
    const Matrix W = C * X;
    const Matrix M = X.transpose() * W;
    G.noalias() += 4.0 * W * off(M);
  }
  for (Index j = 0; j < X.cols(); ++j) {
    G.col(j) -= X.col(j).dot(G.col(j)) * X.col(j);
  }
  return G;
}

double JdField::cost(const Matrix& X) const {
  if (X.rows() != n_) throw DimensionError("JdField::cost: point has wrong row count");
  double total = 0.0;
  for (const Matrix& C : C_) {
    const Matrix M = X.transpose() * (C * X);
    total += M.squaredNorm() - M.diagonal().squaredNorm();
  }
  return total;
}

}  // namespace rsane
