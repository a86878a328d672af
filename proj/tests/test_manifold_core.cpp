#include "test_support.hpp"

#include "rsane/oblique.hpp"
#include "rsane/sphere.hpp"
#include "rsane/stiefel.hpp"

#include <doctest.h>

#include <memory>
#include <random>

using namespace rsane;

namespace {

// Transport with a controllable norm, for exercising the scaling wrapper.
class ScalingTestManifold final : public Manifold {
public:
  explicit ScalingTestManifold(double factor) : factor_(factor) {}
  Index rows() const override { return 2; }
  Index cols() const override { return 1; }
  Matrix retract(const Matrix& X, const Matrix& xi) const override { return X + xi; }
  Matrix transport(const Matrix&, const Matrix&, const Matrix& xi) const override {
    return factor_ * xi;
  }
  Matrix project_tangent(const Matrix&, const Matrix& V) const override { return V; }
  double feasibility_gap(const Matrix&) const override { return 0.0; }
  double tangency_gap(const Matrix&, const Matrix&) const override { return 0.0; }

private:
  double factor_;
};

}  // namespace

TEST_CASE("inner is the trace inner product") {
  SphereGeometry sphere(2);
  const Matrix x = testing::reference_point(sphere);

  CHECK(sphere.inner(x, Matrix::Zero(2, 1), Matrix::Zero(2, 1)) == 0.0);

  Matrix e1 = Matrix::Zero(2, 1), e2 = Matrix::Zero(2, 1);
  e1(0, 0) = 1.0;
  e2(1, 0) = 1.0;
  CHECK(sphere.inner(x, e1, e2) == 0.0);

  StiefelGeometry stiefel(2, 2);
  Matrix xi(2, 2), eta(2, 2);
  xi << 1, 2, 3, 4;
  eta << 1, 0, 0, 1;
  CHECK(stiefel.inner(Matrix::Identity(2, 2), xi, eta) == doctest::Approx(5.0));

  CHECK_THROWS_AS(sphere.inner(x, e1, Matrix::Zero(3, 1)), DimensionError);
}

TEST_CASE("inner is symmetric and bilinear on random inputs") {
  StiefelGeometry geom(6, 2);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix X = testing::random_point(geom, rng);
    const Matrix a = gaussian_matrix(6, 2, rng);
    const Matrix b = gaussian_matrix(6, 2, rng);
    const Matrix c = gaussian_matrix(6, 2, rng);
    const double alpha = 0.7, beta = -2.3;

    const double lhs = geom.inner(X, a, alpha * b + beta * c);
    const double rhs = alpha * geom.inner(X, a, b) + beta * geom.inner(X, a, c);
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    CHECK(std::abs(lhs - rhs) / scale < 1e-12);
    CHECK(geom.inner(X, a, b) == geom.inner(X, b, a));
    CHECK(geom.inner(X, a, a) >= 0.0);
  }
}

TEST_CASE("scaled transport leaves short outputs alone and rescales long ones") {
  Matrix x = Matrix::Zero(2, 1);
  Matrix xi(2, 1);
  xi << 3, 4;
  const Matrix eta = Matrix::Ones(2, 1);

  ScalingTestManifold shrinking(0.5);
  CHECK((scaled_transport(shrinking, x, eta, xi) - 0.5 * xi).norm() == 0.0);

  ScalingTestManifold doubling(2.0);
  const Matrix scaled = scaled_transport(doubling, x, eta, xi);
  CHECK(scaled.norm() == doctest::Approx(xi.norm()));
  // Direction preserved, norm clamped to ||xi||.
  CHECK((scaled / scaled.norm() - xi / xi.norm()).norm() < 1e-15);

  // Degenerate transport output: zero comes back as the zero tangent.
  ScalingTestManifold zeroing(0.0);
  CHECK(scaled_transport(zeroing, x, eta, xi).isZero(0.0));

  // Zero input stays zero regardless of the transport.
  CHECK(scaled_transport(doubling, x, eta, Matrix::Zero(2, 1)).isZero(0.0));
}

TEST_CASE("scaled transport never expands the norm on real geometries") {
  std::mt19937_64 rng(11);
  const SphereGeometry sphere(12);
  const StiefelGeometry stiefel_qr(10, 3, StiefelGeometry::Retraction::Qr);
  const StiefelGeometry stiefel_polar(10, 3, StiefelGeometry::Retraction::Polar);
  const ObliqueGeometry oblique(9, 4);
  const Manifold* geoms[] = {&sphere, &stiefel_qr, &stiefel_polar, &oblique};

  for (const Manifold* geom : geoms) {
    for (int trial = 0; trial < 1000; ++trial) {
      const Matrix X = testing::random_point(*geom, rng);
      const Matrix eta = testing::random_tangent(*geom, X, rng);
      const Matrix xi = testing::random_tangent(*geom, X, rng, 2.0);
      CHECK(scaled_transport(*geom, X, eta, xi).norm() <= xi.norm() + 1e-14);
    }
  }
}
