#pragma once

#include "rsane/types.hpp"

namespace rsane {

/// A tangent vector field F on a manifold. The solver drives the residual
/// merit 0.5 * ||F(X)||_F^2 to zero; fields may optionally provide exact
/// derivative information for that merit.
///
/// Fields are immutable after construction and eval() is pure, so instances
/// are safe to share across concurrent solves.
class VectorField {
public:
  virtual ~VectorField() = default;

  virtual Matrix eval(const Matrix& X) const = 0;

  /// 0.5 * ||F(X)||_F^2.
  virtual double merit(const Matrix& X) const;

  virtual bool has_exact_sigma() const { return false; }

  /// Derivative of the merit along the direction F(X), i.e. the inner product
  /// of the Riemannian merit gradient with F(X), computed without finite
  /// differences. F_X must equal eval(X).
  virtual double exact_sigma(const Matrix& X, const Matrix& F_X) const;

  virtual bool has_merit_gradient() const { return false; }

  /// Riemannian gradient of the merit at X. F_X must equal eval(X).
  virtual Matrix merit_gradient(const Matrix& X, const Matrix& F_X) const;
};

/// Decorator that counts eval() calls, including those made indirectly
/// through merit(). The solver uses it for the Nfe statistic.
class CountingField final : public VectorField {
public:
  explicit CountingField(const VectorField& inner) : inner_(inner) {}

  Matrix eval(const Matrix& X) const override {
    ++evaluations_;
    return inner_.eval(X);
  }
  bool has_exact_sigma() const override { return inner_.has_exact_sigma(); }
  double exact_sigma(const Matrix& X, const Matrix& F_X) const override {
    return inner_.exact_sigma(X, F_X);
  }
  bool has_merit_gradient() const override { return inner_.has_merit_gradient(); }
  Matrix merit_gradient(const Matrix& X, const Matrix& F_X) const override {
    return inner_.merit_gradient(X, F_X);
  }

  long evaluations() const { return evaluations_; }

private:
  const VectorField& inner_;
  mutable long evaluations_ = 0;
};

}  // namespace rsane
