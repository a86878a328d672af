#include "rsane/nep_field.hpp"

#include <vector>

namespace rsane {

SparseMatrix dirichlet_laplacian_1d(Index n) {
  if (n < 1) throw DimensionError("dirichlet_laplacian_1d: n must be >= 1");
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(3 * n));
  for (Index i = 0; i < n; ++i) {
    entries.emplace_back(i, i, 2.0);
    if (i + 1 < n) {
      entries.emplace_back(i, i + 1, -1.0);
      entries.emplace_back(i + 1, i, -1.0);
    }
  }
  SparseMatrix L(n, n);
  L.setFromTriplets(entries.begin(), entries.end());
  L.makeCompressed();
  return L;
}

NepField::NepField(Index n, double mu) : NepField(dirichlet_laplacian_1d(n), mu) {}

NepField::NepField(SparseMatrix laplacian, double mu) : L_(std::move(laplacian)), mu_(mu) {
  if (L_.rows() != L_.cols()) throw DimensionError("NepField: Laplacian must be square");
  if (mu < 0.0) throw std::invalid_argument("NepField: mu must be >= 0");
  const SparseMatrix Lt = SparseMatrix(L_.transpose());
  if ((L_ - Lt).norm() > 1e-12 * std::max(1.0, L_.norm())) {
    throw std::invalid_argument("NepField: Laplacian must be symmetric");
  }
  L_solver_.compute(L_);
  if (L_solver_.info() != Eigen::Success) {
    throw std::invalid_argument("NepField: Laplacian factorization failed (singular?)");
  }
}

Vector NepField::density_potential(const Matrix& X) const {
  const Vector rho = X.rowwise().squaredNorm();
  return L_solver_.solve(rho);
}

Matrix NepField::eval(const Matrix& X) const {
  const Vector d = mu_ * density_potential(X);
  const Matrix HX = L_ * X + d.asDiagonal() * X;
  return HX - X * (X.transpose() * HX);
}

Matrix NepField::H(const Matrix& X) const {
  Matrix Hd = Matrix(L_);
  Hd.diagonal() += mu_ * density_potential(X);
  return Hd;
}

Matrix NepField::lambda_block(const Matrix& X) const {
  const Vector d = mu_ * density_potential(X);
  const Matrix HX = L_ * X + d.asDiagonal() * X;
  return X.transpose() * HX;
}

}  // namespace rsane
