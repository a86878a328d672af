#pragma once

#include "rsane/manifold.hpp"
#include "rsane/vector_field.hpp"

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace rsane {

enum class SigmaMode { Exact, FiniteDifference };
enum class BbMode { Rbb1, Rbb2, Adaptive };
enum class BreakdownMode { Stop, GradientFallback };

struct SolverConfig {
  double eta = 0.6;           // merit averaging weight, in [0, 1)
  double delta = 0.2;         // backtracking factor, in (0, 1)
  double rho1 = 1e-4;         // sufficient-decrease constant, in (0, 1)
  double eps1 = 1e-8;         // breakdown threshold, in (0, 1)
  double tau_init = 1e-3;     // first trial step
  double tau_min = 1e-10;     // spectral step safeguards, 0 < tau_min <= tau_max
  double tau_max = 1e+10;
  double eps = 1e-5;          // residual norm tolerance
  double eps_x = 1e-15;       // relative iterate-change tolerance
  double eps_f = 1e-15;       // relative merit-change tolerance
  int stagnation_window = 5;  // window for the averaged relative-change rule
  int max_iterations = 15000;
  SigmaMode sigma_mode = SigmaMode::FiniteDifference;
  double fd_h = 1e-8;         // base finite-difference increment
  BbMode bb_mode = BbMode::Adaptive;
  BreakdownMode breakdown_mode = BreakdownMode::Stop;
  int max_backtracks = 60;

  /// Throws std::invalid_argument when a parameter is out of range.
  void validate() const;
};

enum class SolveStatus {
  ConvergedResidual,
  ConvergedRelChange,
  ConvergedStagnation,
  MaxIterations,
  Breakdown,
  LineSearchFailure,
};

const char* to_string(SolveStatus status);

/// One row per completed iteration k: the state at X_k together with the
/// parameters of the step that produced X_{k+1}.
struct IterationRecord {
  int k = 0;
  double residual_norm = 0.0;  // ||F(X_k)||_F
  double merit = 0.0;          // 0.5 ||F(X_k)||^2
  double c = 0.0;              // averaged merit C_k
  double q = 0.0;              // averaging weight Q_k
  double sigma = 0.0;
  double tau = 0.0;            // accepted step size
  int backtracks = 0;
  double rel_x = 0.0;          // ||X_{k+1} - X_k|| / ||X_k||
  double rel_f = 0.0;          // |merit_{k+1} - merit_k| / (merit_k + 1)
  double yhat_gap = 0.0;       // agreement of the two residual-difference forms
  int fallback = 0;            // 1 when the step used the gradient direction
  long nfe = 0;                // cumulative field evaluations after this iteration
};

struct SolverReport {
  SolveStatus status = SolveStatus::MaxIterations;
  Matrix X;                    // final iterate
  double residual_norm = 0.0;  // ||F|| at the final iterate
  double merit = 0.0;
  double c = 0.0;              // final averaged merit
  double q = 0.0;              // final averaging weight
  int iterations = 0;
  long nfe = 0;
  double seconds = 0.0;
  double tau_next = 0.0;  // spectral step proposed for the iteration that never ran
  std::vector<IterationRecord> trace;

  bool converged() const {
    return status == SolveStatus::ConvergedResidual || status == SolveStatus::ConvergedRelChange ||
           status == SolveStatus::ConvergedStagnation;
  }
};

/// Sign of a nonzero scalar as an integer factor.
inline int sign_s(double x) { return x < 0.0 ? -1 : 1; }

/// Derivative of the merit along F(X). Exact mode delegates to the field's
/// capability; finite-difference mode evaluates the one-sided quotient of the
/// merit along the retraction curve through h * F(X). h must be > 0 in
/// finite-difference mode and is used as given.
double sigma_value(const VectorField& field, const Manifold& geom, const Matrix& X,
                   const Matrix& F_X, SigmaMode mode, double h);

/// Residual search direction -sign(sigma) * F(X).
Matrix direction(double sigma, const Matrix& F_X);

/// Averaged-merit update: returns (C_{k+1}, Q_{k+1}) from the accepted merit.
std::pair<double, double> zh_update(double c, double q, double merit_next, double eta);

struct LineSearchResult {
  bool accepted = false;
  double tau = 0.0;
  Matrix X_next;
  Matrix F_next;
  double merit_next = 0.0;
  int backtracks = 0;
};

/// Backtracks tau from tau_start by cfg.delta until
///   merit(retract(X, tau Z)) <= c_k - decrease_rate * tau,
/// giving up after cfg.max_backtracks trials. decrease_rate must be >= 0.
LineSearchResult line_search(const VectorField& field, const Manifold& geom, const Matrix& X,
                             const Matrix& Z, double c_k, double decrease_rate, double tau_start,
                             const SolverConfig& cfg);

/// Transported displacement / residual-difference pair for the spectral step,
/// specialized to residual directions Z = -sign(sigma) F(X). dual_gap is the
/// distance between the direct difference form and the secant form, which
/// agree algebraically.
struct SpectralPair {
  Matrix S;
  Matrix Y;
  double dual_gap = 0.0;
};

SpectralPair build_spectral_pair(const Manifold& geom, const Matrix& X, double tau, double sigma,
                                 const Matrix& F_X, const Matrix& F_next);

/// Same pair for an arbitrary tangent direction Z (used after gradient
/// fallback steps); no secant form exists, so dual_gap is 0.
SpectralPair build_spectral_pair_general(const Manifold& geom, const Matrix& X, const Matrix& Z,
                                         double tau, const Matrix& F_X, const Matrix& F_next);

/// Raw spectral quotients; may be non-finite on degenerate input.
double rbb1_raw(const Matrix& S, const Matrix& Y, int sign);
double rbb2_raw(const Matrix& S, const Matrix& Y, int sign);

/// Next trial step: raw quotient chosen by bb_mode (alternating on the parity
/// of k in adaptive mode), clamped into [tau_min, tau_max]. Degenerate raw
/// values (non-finite or <= 0) map to tau_min.
double rbb_step(const Matrix& S, const Matrix& Y, double sigma, long k, double tau_min,
                double tau_max, BbMode mode);

/// Evaluates the stopping rules on the trace so far: residual tolerance,
/// relative-change tolerances, windowed-mean stagnation, iteration budget.
/// The last record must describe the current iterate.
std::optional<SolveStatus> check_stop(const std::vector<IterationRecord>& trace,
                                      const SolverConfig& cfg);

/// Runs the spectral residual iteration for a tangent vector field on the
/// given geometry, starting from a feasible X0.
SolverReport solve(const VectorField& field, const Manifold& geom, const Matrix& X0,
                   const SolverConfig& cfg = {});

/// Euclidean spectral residual baseline for G: R^n -> R^n: identity
/// retraction/transport and the first spectral quotient, with the same
/// globalization and stopping rules.
SolverReport sane_solve(const std::function<Vector(const Vector&)>& G, const Vector& x0,
                        SolverConfig cfg = {});

}  // namespace rsane
