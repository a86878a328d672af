#pragma once

#include "rsane/jd_field.hpp"
#include "rsane/solver.hpp"
#include "rsane/stiefel.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace rsane {

/// Standard-normal matrix drawn from the given generator (column-major fill).
Matrix gaussian_matrix(Index rows, Index cols, std::mt19937_64& rng);

/// Deterministic eigenvalue starting vector (1, ..., 1)^T / sqrt(n).
Vector gen_eig_start(Index n);

/// Random feasible Stiefel point: orthogonal factor of a Gaussian matrix.
Matrix gen_stiefel_start(Index n, Index p, std::uint64_t seed);

/// Seeded symmetric positive definite test matrix for eigenvalue runs without
/// an input file.
SparseMatrix gen_spd_matrix(Index n, std::uint64_t seed);

struct JdInstance {
  JdField field;
  Matrix X0;  // columnwise-normalized Gaussian, feasible on the oblique manifold
};

/// Joint-diagonalization instance: C_i = D + B_i + B_i^T with d_ii =
/// sqrt(n + i) and Gaussian B_i, plus the random starting point.
JdInstance gen_jd_instance(Index n, Index p, int num_matrices, std::uint64_t seed);

enum class Problem { Eig, SaneEig, Nep, Jd };

struct ExperimentSpec {
  Problem problem = Problem::Eig;
  std::string name;  // row label and trace file prefix; required
  Index n = 100;
  Index p = 10;
  int num_matrices = 5;  // jd
  double mu = 1.0;       // nep
  std::string matrix_path;  // eig family; empty -> generated SPD matrix
  std::uint64_t seed = 1;
  int repetitions = 1;
  StiefelGeometry::Retraction retraction = StiefelGeometry::Retraction::Qr;
  SolverConfig solver;      // solver.eps is the base tolerance of the problem family
  std::string out_dir;      // empty -> nothing written
  bool write_traces = true;
};

struct RunResult {
  std::uint64_t seed = 0;
  SolverReport report;
  double nrmf = 0.0;  // reported residual (problem-family convention)
};

struct SummaryRow {
  std::string name;
  Index n = 0;
  Index p = 0;
  std::uint64_t seed = 0;  // base seed of the batch, for reproducibility
  double nfe = 0.0;        // means over repetitions
  double nrmf = 0.0;
  double nitr = 0.0;
  double time = 0.0;
  int runs = 0;
  int converged = 0;
};

struct ExperimentResult {
  std::vector<RunResult> runs;
  SummaryRow summary;
};

/// Runs every repetition of the spec (seeded as seed + repetition index),
/// writes per-run trace CSVs and the summary table when out_dir is set, and
/// returns all reports. Solver failures are recorded per run, not thrown.
ExperimentResult run_experiment(const ExperimentSpec& spec);

void write_trace_csv(std::ostream& out, const std::vector<IterationRecord>& trace);
std::vector<IterationRecord> read_trace_csv(std::istream& in);

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
std::string format_summary_table(const std::vector<SummaryRow>& rows);

}  // namespace rsane
