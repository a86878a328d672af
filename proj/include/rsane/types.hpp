#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <stdexcept>
#include <string>

namespace rsane {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Index = Eigen::Index;

/// Matrix arguments whose shapes do not match an operation's requirements.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A retraction that cannot be evaluated at the given input (zero column,
/// rank-deficient X + xi, ...).
class SingularRetractionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input to qf() with numerically deficient column rank.
class RankDeficiencyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An optional capability (exact sigma, merit gradient) was requested from a
/// field that does not provide it.
class CapabilityError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

inline void check_same_shape(const Matrix& a, const Matrix& b, const char* where) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(where) + ": shape mismatch (" +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
  }
}

}  // namespace rsane
