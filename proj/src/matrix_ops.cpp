#include "rsane/matrix_ops.hpp"

#include <Eigen/Dense>

namespace rsane {

namespace {

void check_square(const Matrix& W, const char* where) {
  if (W.rows() != W.cols()) {
    throw DimensionError(std::string(where) + ": expected a square matrix, got " +
                         std::to_string(W.rows()) + "x" + std::to_string(W.cols()));
  }
}

}  // namespace

Matrix sym(const Matrix& W) {
  check_square(W, "sym");
  return 0.5 * (W + W.transpose());
}

Matrix ddiag(const Matrix& W) {
  check_square(W, "ddiag");
  return W.diagonal().asDiagonal();
}

Matrix off(const Matrix& W) {
  check_square(W, "off");
  Matrix result = W;
  result.diagonal().setZero();
  return result;
}

QrFactors qr_positive(const Matrix& W) {
  const Index n = W.rows();
  const Index p = W.cols();
  if (p > n) {
    throw DimensionError("qr_positive: more columns than rows");
  }

  Eigen::HouseholderQR<Matrix> qr(W);
  Matrix Q = qr.householderQ() * Matrix::Identity(n, p);
  Matrix R = qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();

  const double rank_tol = 1e-12 * W.norm();
  for (Index i = 0; i < p; ++i) {
    if (std::abs(R(i, i)) <= rank_tol) {
      throw RankDeficiencyError("qr_positive: column rank deficiency (|R_" +
                                std::to_string(i) + std::to_string(i) + "| <= 1e-12 ||W||)");
    }
    if (R(i, i) < 0.0) {
      Q.col(i) = -Q.col(i);
      R.row(i) = -R.row(i);
    }
  }
  return {std::move(Q), std::move(R)};
}

Matrix qf(const Matrix& W) { return qr_positive(W).Q; }

Matrix polar_factor(const Matrix& W) {
  const Matrix gram = W.transpose() * W;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
  if (eig.info() != Eigen::Success) {
    throw SingularRetractionError("polar_factor: Gram eigendecomposition failed");
  }
  const Vector& ev = eig.eigenvalues();
  const double ev_max = ev(ev.size() - 1);
  if (ev(0) <= 1e-14 * ev_max || ev_max <= 0.0) {
    throw SingularRetractionError("polar_factor: rank-deficient input");
  }
  const Matrix inv_sqrt =
      eig.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
  return W * inv_sqrt;
}

}  // namespace rsane
