#include "rsane/experiment.hpp"

#include "rsane/eigen_field.hpp"
#include "rsane/matrix_market.hpp"
#include "rsane/matrix_ops.hpp"
#include "rsane/nep_field.hpp"
#include "rsane/oblique.hpp"
#include "rsane/sphere.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace rsane {

Matrix gaussian_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Matrix M(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      M(i, j) = gauss(rng);
    }
  }
  return M;
}

Vector gen_eig_start(Index n) {
  if (n < 1) throw DimensionError("gen_eig_start: n must be >= 1");
  return Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
}

Matrix gen_stiefel_start(Index n, Index p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return qf(gaussian_matrix(n, p, rng));
}

SparseMatrix gen_spd_matrix(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Random orthogonal conjugation of a well-spaced spectrum in [1, 5]. The
  // uniform eigenvalue spacing keeps converged Rayleigh quotients in the
  // quadratic-accuracy regime of the residual tolerance.
  const Matrix Q = qf(gaussian_matrix(n, n, rng));
  Vector d(n);
  for (Index i = 0; i < n; ++i) {
    d(i) = n > 1 ? 1.0 + 4.0 * static_cast<double>(i) / static_cast<double>(n - 1) : 1.0;
  }
  const Matrix A = 0.5 * (Q * d.asDiagonal() * Q.transpose() +
                          (Q * d.asDiagonal() * Q.transpose()).transpose());
  SparseMatrix out = A.sparseView();
  out.makeCompressed();
  return out;
}

JdInstance gen_jd_instance(Index n, Index p, int num_matrices, std::uint64_t seed) {
  if (num_matrices < 1) throw std::invalid_argument("gen_jd_instance: need at least one matrix");
  std::mt19937_64 rng(seed);
  Vector d(n);
  for (Index i = 0; i < n; ++i) {
    d(i) = std::sqrt(static_cast<double>(n + i + 1));
  }
  std::vector<Matrix> Cs;
  Cs.reserve(num_matrices);
  for (int i = 0; i < num_matrices; ++i) {
    const Matrix B = gaussian_matrix(n, n, rng);
    Matrix C = B + B.transpose();
    C.diagonal() += d;
    Cs.push_back(std::move(C));
  }
  Matrix X0 = gaussian_matrix(n, p, rng);
  for (Index j = 0; j < p; ++j) {
    X0.col(j).normalize();
  }
  return {JdField(std::move(Cs)), std::move(X0)};
}

namespace {

double eig_nrmf(const EigenField& field, const Vector& x_final, double x0_norm) {
  const double g = field.euclidean(x_final).norm();
  return std::min(g / x0_norm, g);
}

RunResult run_single(const ExperimentSpec& spec, std::uint64_t seed) {
  RunResult run;
  run.seed = seed;
  switch (spec.problem) {
    case Problem::Eig: {
      const EigenField field(spec.matrix_path.empty() ? gen_spd_matrix(spec.n, seed)
                                                      : load_matrix_market(spec.matrix_path));
      const SphereGeometry geom(field.size());
      const Vector x0 = gen_eig_start(field.size());
      SolverConfig cfg = spec.solver;
      cfg.eps = std::max(cfg.eps, cfg.eps * field.euclidean(x0).norm());
      run.report = solve(field, geom, x0, cfg);
      run.nrmf = eig_nrmf(field, run.report.X.col(0), x0.norm());
      break;
    }
    case Problem::SaneEig: {
      const EigenField field(spec.matrix_path.empty() ? gen_spd_matrix(spec.n, seed)
                                                      : load_matrix_market(spec.matrix_path));
      const Vector x0 = gen_eig_start(field.size());
      SolverConfig cfg = spec.solver;
      cfg.eps = std::max(cfg.eps, cfg.eps * field.euclidean(x0).norm());
      run.report = sane_solve([&field](const Vector& x) { return field.euclidean(x); }, x0, cfg);
      run.nrmf = eig_nrmf(field, run.report.X.col(0), x0.norm());
      break;
    }
    case Problem::Nep: {
      const NepField field(spec.n, spec.mu);
      const StiefelGeometry geom(spec.n, spec.p, spec.retraction);
      const Matrix X0 = gen_stiefel_start(spec.n, spec.p, seed);
      run.report = solve(field, geom, X0, spec.solver);
      run.nrmf = run.report.residual_norm;
      break;
    }
    case Problem::Jd: {
      const JdInstance instance = gen_jd_instance(spec.n, spec.p, spec.num_matrices, seed);
      const ObliqueGeometry geom(spec.n, spec.p);
      run.report = solve(instance.field, geom, instance.X0, spec.solver);
      run.nrmf = run.report.residual_norm;
      break;
    }
  }
  return run;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  if (spec.name.empty()) throw std::invalid_argument("run_experiment: spec.name is required");
  if (spec.repetitions < 1) throw std::invalid_argument("run_experiment: repetitions must be >= 1");

  ExperimentResult result;
  result.runs.reserve(spec.repetitions);
  for (int rep = 0; rep < spec.repetitions; ++rep) {
    result.runs.push_back(run_single(spec, spec.seed + static_cast<std::uint64_t>(rep)));
  }

  SummaryRow& row = result.summary;
  row.name = spec.name;
  row.n = result.runs.front().report.X.rows();  // actual problem size (files override spec.n)
  row.p = result.runs.front().report.X.cols();
  row.seed = spec.seed;
  row.runs = spec.repetitions;
  for (const RunResult& run : result.runs) {
    row.nfe += static_cast<double>(run.report.nfe);
    row.nrmf += run.nrmf;
    row.nitr += static_cast<double>(run.report.iterations);
    row.time += run.report.seconds;
    if (run.report.converged()) ++row.converged;
  }
  const double count = static_cast<double>(spec.repetitions);
  row.nfe /= count;
  row.nrmf /= count;
  row.nitr /= count;
  row.time /= count;

  if (!spec.out_dir.empty()) {
    namespace fs = std::filesystem;
    fs::create_directories(spec.out_dir);
    if (spec.write_traces) {
      for (const RunResult& run : result.runs) {
        const fs::path path =
            fs::path(spec.out_dir) / (spec.name + "_seed" + std::to_string(run.seed) + "_trace.csv");
        std::ofstream out(path);
        if (!out) throw std::runtime_error("run_experiment: cannot write " + path.string());
        write_trace_csv(out, run.report.trace);
      }
    }
    std::ofstream csv(fs::path(spec.out_dir) / (spec.name + "_summary.csv"));
    write_summary_csv(csv, {row});
    std::ofstream txt(fs::path(spec.out_dir) / (spec.name + "_summary.txt"));
    txt << format_summary_table({row});
  }
  return result;
}

namespace {

// %.17g so that doubles survive a write/read round trip exactly.
std::string full(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

}  // namespace

void write_trace_csv(std::ostream& out, const std::vector<IterationRecord>& trace) {
  out << "k,residual_norm,merit,c,q,sigma,tau,backtracks,rel_x,rel_f,yhat_gap,fallback,nfe\n";
  for (const IterationRecord& r : trace) {
    out << r.k << ',' << full(r.residual_norm) << ',' << full(r.merit) << ',' << full(r.c) << ','
        << full(r.q) << ',' << full(r.sigma) << ',' << full(r.tau) << ',' << r.backtracks << ','
        << full(r.rel_x) << ',' << full(r.rel_f) << ',' << full(r.yhat_gap) << ',' << r.fallback
        << ',' << r.nfe << '\n';
  }
}

std::vector<IterationRecord> read_trace_csv(std::istream& in) {
  std::vector<IterationRecord> trace;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_trace_csv: missing header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    IterationRecord r;
    char comma = 0;
    if (!(fields >> r.k >> comma >> r.residual_norm >> comma >> r.merit >> comma >> r.c >> comma >>
          r.q >> comma >> r.sigma >> comma >> r.tau >> comma >> r.backtracks >> comma >> r.rel_x >>
          comma >> r.rel_f >> comma >> r.yhat_gap >> comma >> r.fallback >> comma >> r.nfe)) {
      throw std::runtime_error("read_trace_csv: bad record '" + line + "'");
    }
    trace.push_back(r);
  }
  return trace;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "name,n,p,seed,nfe,nrmf,nitr,time,converged,runs\n";
  for (const SummaryRow& row : rows) {
    out << row.name << ',' << row.n << ',' << row.p << ',' << row.seed << ',' << full(row.nfe)
        << ',' << full(row.nrmf) << ',' << full(row.nitr) << ',' << std::fixed
        << std::setprecision(3) << row.time << std::defaultfloat << ',' << row.converged << ','
        << row.runs << '\n';
  }
}

std::string format_summary_table(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << std::left << std::setw(24) << "name" << std::right << std::setw(8) << "n" << std::setw(6)
      << "p" << std::setw(12) << "Nfe" << std::setw(14) << "NrmF" << std::setw(10) << "Nitr"
      << std::setw(10) << "Time" << std::setw(6) << "ok" << '\n';
  for (const SummaryRow& row : rows) {
    out << std::left << std::setw(24) << row.name << std::right << std::setw(8) << row.n
        << std::setw(6) << row.p << std::setw(12) << std::setprecision(1) << std::fixed << row.nfe
        << std::setw(14) << std::scientific << std::setprecision(2) << row.nrmf << std::fixed
        << std::setw(10) << std::setprecision(1) << row.nitr << std::setw(10)
        << std::setprecision(3) << row.time << std::setw(3) << row.converged << "/" << row.runs
        << '\n';
    out << std::defaultfloat;
  }
  return out.str();
}

}  // namespace rsane
