#include "rsane/solver.hpp"

#include "rsane/euclidean.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace rsane {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("SolverConfig: ") + what);
}

}  // namespace

void SolverConfig::validate() const {
  require(eta >= 0.0 && eta < 1.0, "eta must lie in [0, 1)");
  require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  require(rho1 > 0.0 && rho1 < 1.0, "rho1 must lie in (0, 1)");
  require(eps1 > 0.0 && eps1 < 1.0, "eps1 must lie in (0, 1)");
  require(tau_init > 0.0, "tau_init must be > 0");
  require(tau_min > 0.0 && tau_min <= tau_max && std::isfinite(tau_max),
          "need 0 < tau_min <= tau_max < inf");
  require(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
  require(eps_x >= 0.0 && eps_f >= 0.0, "relative-change tolerances must be >= 0");
  require(stagnation_window >= 1, "stagnation_window must be >= 1");
  require(max_iterations >= 1, "max_iterations must be >= 1");
  require(fd_h > 0.0, "fd_h must be > 0");
  require(max_backtracks >= 0, "max_backtracks must be >= 0");
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::ConvergedResidual: return "converged_residual";
    case SolveStatus::ConvergedRelChange: return "converged_relchange";
    case SolveStatus::ConvergedStagnation: return "converged_stagnation";
    case SolveStatus::MaxIterations: return "max_iterations";
    case SolveStatus::Breakdown: return "breakdown";
    case SolveStatus::LineSearchFailure: return "line_search_failure";
  }
  return "unknown";
}

double sigma_value(const VectorField& field, const Manifold& geom, const Matrix& X,
                   const Matrix& F_X, SigmaMode mode, double h) {
  if (mode == SigmaMode::Exact) {
    if (!field.has_exact_sigma()) {
      throw CapabilityError("sigma_value: exact mode requested but the field has no exact sigma");
    }
    return field.exact_sigma(X, F_X);
  }
  if (h <= 0.0) throw std::invalid_argument("sigma_value: finite-difference step must be > 0");
  const double merit_x = 0.5 * F_X.squaredNorm();
  const Matrix X_h = geom.retract(X, h * F_X);
  return (field.merit(X_h) - merit_x) / h;
}

Matrix direction(double sigma, const Matrix& F_X) {
  return static_cast<double>(-sign_s(sigma)) * F_X;
}

std::pair<double, double> zh_update(double c, double q, double merit_next, double eta) {
  const double q_next = eta * q + 1.0;
  const double c_next = (eta * q * c + merit_next) / q_next;
  return {c_next, q_next};
}

LineSearchResult line_search(const VectorField& field, const Manifold& geom, const Matrix& X,
                             const Matrix& Z, double c_k, double decrease_rate, double tau_start,
                             const SolverConfig& cfg) {
  if (tau_start <= 0.0) throw std::invalid_argument("line_search: tau_start must be > 0");
  LineSearchResult out;
  double tau = tau_start;
  for (int bt = 0; bt <= cfg.max_backtracks; ++bt) {
    bool usable = true;
    Matrix X_trial;
    try {
      X_trial = geom.retract(X, tau * Z);
    } catch (const SingularRetractionError&) {
      usable = false;  // step too long to retract; shrink and retry
    }
    if (usable) {
      Matrix F_trial = field.eval(X_trial);
      const double merit_trial = 0.5 * F_trial.squaredNorm();
      if (merit_trial <= c_k - decrease_rate * tau) {
        out.accepted = true;
        out.tau = tau;
        out.X_next = std::move(X_trial);
        out.F_next = std::move(F_trial);
        out.merit_next = merit_trial;
        out.backtracks = bt;
        return out;
      }
    }
    tau *= cfg.delta;
  }
  out.accepted = false;
  out.backtracks = cfg.max_backtracks;
  return out;
}

SpectralPair build_spectral_pair(const Manifold& geom, const Matrix& X, double tau, double sigma,
                                 const Matrix& F_X, const Matrix& F_next) {
  const double ts = tau * sign_s(sigma);
  const Matrix eta = -ts * F_X;  // tau * Z
  const Matrix carried = scaled_transport(geom, X, eta, F_X);
  SpectralPair out;
  out.S = -ts * carried;
  out.Y = F_next - carried;
  const Matrix y_secant = F_next + out.S / ts;
  out.dual_gap = (out.Y - y_secant).norm();
  return out;
}

SpectralPair build_spectral_pair_general(const Manifold& geom, const Matrix& X, const Matrix& Z,
                                         double tau, const Matrix& F_X, const Matrix& F_next) {
  const Matrix eta = tau * Z;
  SpectralPair out;
  out.S = scaled_transport(geom, X, eta, eta);
  out.Y = F_next - scaled_transport(geom, X, eta, F_X);
  out.dual_gap = 0.0;
  return out;
}

double rbb1_raw(const Matrix& S, const Matrix& Y, int sign) {
  return sign * S.squaredNorm() / S.cwiseProduct(Y).sum();
}

double rbb2_raw(const Matrix& S, const Matrix& Y, int sign) {
  return sign * S.cwiseProduct(Y).sum() / Y.squaredNorm();
}

double rbb_step(const Matrix& S, const Matrix& Y, double sigma, long k, double tau_min,
                double tau_max, BbMode mode) {
  const int s = sign_s(sigma);
  double raw = 0.0;
  switch (mode) {
    case BbMode::Rbb1: raw = rbb1_raw(S, Y, s); break;
    case BbMode::Rbb2: raw = rbb2_raw(S, Y, s); break;
    case BbMode::Adaptive: raw = (k % 2 == 0) ? rbb1_raw(S, Y, s) : rbb2_raw(S, Y, s); break;
  }
  if (!std::isfinite(raw) || raw <= 0.0) return tau_min;
  return std::max(std::min(raw, tau_max), tau_min);
}

std::optional<SolveStatus> check_stop(const std::vector<IterationRecord>& trace,
                                      const SolverConfig& cfg) {
  if (trace.empty()) throw std::logic_error("check_stop: empty trace");
  if (trace.back().residual_norm < cfg.eps) return SolveStatus::ConvergedResidual;

  const std::size_t steps = trace.size() - 1;  // completed iterations
  if (steps >= 1) {
    const IterationRecord& last_step = trace[steps - 1];
    if (last_step.rel_x < cfg.eps_x && last_step.rel_f < cfg.eps_f) {
      return SolveStatus::ConvergedRelChange;
    }
    const std::size_t window = std::min<std::size_t>(steps, cfg.stagnation_window);
    double mean_x = 0.0;
    double mean_f = 0.0;
    for (std::size_t i = steps - window; i < steps; ++i) {
      mean_x += trace[i].rel_x;
      mean_f += trace[i].rel_f;
    }
    mean_x /= static_cast<double>(window);
    mean_f /= static_cast<double>(window);
    if (mean_x <= 10.0 * cfg.eps_x && mean_f <= 10.0 * cfg.eps_f) {
      return SolveStatus::ConvergedStagnation;
    }
  }
  if (static_cast<long>(steps) >= cfg.max_iterations) return SolveStatus::MaxIterations;
  return std::nullopt;
}

SolverReport solve(const VectorField& field_in, const Manifold& geom, const Matrix& X0,
                   const SolverConfig& cfg) {
  cfg.validate();
  if (X0.rows() != geom.rows() || X0.cols() != geom.cols()) {
    throw DimensionError("solve: X0 shape does not match the geometry");
  }
  if (!X0.allFinite()) throw std::invalid_argument("solve: X0 has non-finite entries");
  if (geom.feasibility_gap(X0) > 1e-8) {
    throw std::invalid_argument("solve: X0 is not feasible (gap " +
                                std::to_string(geom.feasibility_gap(X0)) + ")");
  }
  if (cfg.breakdown_mode == BreakdownMode::GradientFallback && !field_in.has_merit_gradient()) {
    throw CapabilityError("solve: gradient fallback requires a field with a merit gradient");
  }

  const auto t_start = std::chrono::steady_clock::now();
  CountingField field(field_in);

  SolverReport rep;
  Matrix X = X0;
  Matrix F = field.eval(X);
  double resid = F.norm();
  double merit = 0.5 * resid * resid;
  double c = merit;
  double q = 1.0;
  double tau_next = cfg.tau_init;
  long k = 0;

  auto push_state = [&](long kk) {
    IterationRecord row;
    row.k = static_cast<int>(kk);
    row.residual_norm = resid;
    row.merit = merit;
    row.c = c;
    row.q = q;
    row.nfe = field.evaluations();
    rep.trace.push_back(row);
  };
  push_state(0);

  SolveStatus status = SolveStatus::MaxIterations;
  while (true) {
    if (auto stop = check_stop(rep.trace, cfg)) {
      status = *stop;
      break;
    }

    const double resid_sq = resid * resid;
    double sigma;
    if (cfg.sigma_mode == SigmaMode::Exact) {
      sigma = sigma_value(field, geom, X, F, SigmaMode::Exact, 0.0);
    } else {
      const double h = cfg.fd_h / std::max(1.0, resid);
      sigma = sigma_value(field, geom, X, F, SigmaMode::FiniteDifference, h);
    }

    bool fallback = false;
    Matrix Z;
    double decrease_rate;
    if (std::abs(sigma) < cfg.eps1 * resid_sq) {
      if (cfg.breakdown_mode == BreakdownMode::Stop) {
        rep.trace.back().sigma = sigma;
        status = SolveStatus::Breakdown;
        break;
      }
      Matrix grad = field.merit_gradient(X, F);
      // A gradient at rounding-noise level means the merit is stationary and
      // no descent direction is left.
      if (grad.norm() <= 1e-12 * std::max(1.0, resid)) {
        rep.trace.back().sigma = sigma;
        status = SolveStatus::Breakdown;
        break;
      }
      fallback = true;
      decrease_rate = cfg.rho1 * grad.squaredNorm();
      Z = -grad;
    } else {
      Z = direction(sigma, F);
      decrease_rate = cfg.rho1 * cfg.eps1 * resid_sq;
    }

    LineSearchResult ls = line_search(field, geom, X, Z, c, decrease_rate, tau_next, cfg);
    if (!ls.accepted) {
      IterationRecord& row = rep.trace.back();
      row.sigma = sigma;
      row.backtracks = ls.backtracks;
      row.fallback = fallback ? 1 : 0;
      status = SolveStatus::LineSearchFailure;
      break;
    }

    const double resid_next = ls.F_next.norm();
    const double x_norm = X.norm();
    const double step_norm = (ls.X_next - X).norm();
    const double rel_x = x_norm > 0.0 ? step_norm / x_norm : step_norm;
    const double rel_f = std::abs(ls.merit_next - merit) / (merit + 1.0);
    const auto [c_next, q_next] = zh_update(c, q, ls.merit_next, cfg.eta);

    const SpectralPair pair =
        fallback ? build_spectral_pair_general(geom, X, Z, ls.tau, F, ls.F_next)
                 : build_spectral_pair(geom, X, ls.tau, sigma, F, ls.F_next);
    tau_next = rbb_step(pair.S, pair.Y, sigma, k, cfg.tau_min, cfg.tau_max, cfg.bb_mode);

    IterationRecord& row = rep.trace.back();
    row.sigma = sigma;
    row.tau = ls.tau;
    row.backtracks = ls.backtracks;
    row.rel_x = rel_x;
    row.rel_f = rel_f;
    row.yhat_gap = pair.dual_gap;
    row.fallback = fallback ? 1 : 0;
    row.nfe = field.evaluations();

    X = std::move(ls.X_next);
    F = std::move(ls.F_next);
    resid = resid_next;
    merit = ls.merit_next;
    c = c_next;
    q = q_next;
    ++k;
    push_state(k);
  }

  rep.status = status;
  rep.X = std::move(X);
  rep.residual_norm = resid;
  rep.merit = merit;
  rep.c = c;
  rep.q = q;
  rep.iterations = static_cast<int>(k);
  rep.nfe = field.evaluations();
  rep.tau_next = tau_next;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return rep;
}

namespace {

class EuclideanMapField final : public VectorField {
public:
  explicit EuclideanMapField(const std::function<Vector(const Vector&)>& G) : G_(G) {}
  Matrix eval(const Matrix& X) const override { return G_(X.col(0)); }

private:
  const std::function<Vector(const Vector&)>& G_;
};

}  // namespace

SolverReport sane_solve(const std::function<Vector(const Vector&)>& G, const Vector& x0,
                        SolverConfig cfg) {
  cfg.bb_mode = BbMode::Rbb1;  // the classical spectral quotient
  cfg.sigma_mode = SigmaMode::FiniteDifference;
  EuclideanGeometry geom(x0.size());
  EuclideanMapField field(G);
  return solve(field, geom, x0, cfg);
}

}  // namespace rsane
