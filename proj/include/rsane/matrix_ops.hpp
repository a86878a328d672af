#pragma once

#include "rsane/types.hpp"

namespace rsane {

/// Symmetric part (W + W^T)/2 of a square matrix.
Matrix sym(const Matrix& W);

/// Diagonal part of a square matrix (off-diagonal entries zeroed).
Matrix ddiag(const Matrix& W);

/// Off-diagonal part W - ddiag(W) of a square matrix.
Matrix off(const Matrix& W);

struct QrFactors {
  Matrix Q;  // n x p, orthonormal columns
  Matrix R;  // p x p, upper triangular with positive diagonal
};

/// Thin QR factorization W = QR normalized so that diag(R) > 0, which makes
/// the factorization unique. Throws RankDeficiencyError when some
/// |R_ii| <= 1e-12 * ||W||_F.
QrFactors qr_positive(const Matrix& W);

/// Orthogonal factor of qr_positive.
Matrix qf(const Matrix& W);

/// Polar factor W (W^T W)^{-1/2}, computed from the eigendecomposition of the
/// p x p Gram matrix. Throws SingularRetractionError when the smallest Gram
/// eigenvalue is <= 1e-14 times the largest.
Matrix polar_factor(const Matrix& W);

}  // namespace rsane
