#ifndef GOPW_STUDY_HPP
#define GOPW_STUDY_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gopw/dg.hpp"
#include "gopw/experiments.hpp"

namespace gopw {

struct RunConfig {
  std::string experiment = "example1";
  SpaceCase space_case = SpaceCase::two;
  double omega = 32.0;
  int nx = 8;          // ny = nx; h = 1/nx
  int p = 0;           // 0: pairing default (2m+1 for case 1, m for case 2)
  int m = 5;
  int q = -1;          // -1: dg-mode selection from the run parameters
  int quad_n1d = 0;    // 0: wavelength-resolving default
  int threads = 1;
  double c0_bound = 8.0;  // admissible omega*h
  BoundaryWeight eta = BoundaryWeight::omega;
  bool include_timing = true;
};

struct RunResult {
  double omega = 0.0;
  double h = 0.0;
  int p = 0, q = 0, m = 0;
  int space_case = 2;
  long dofs = 0;
  double err = 0.0;
  std::optional<double> order;       // vs previous h row
  std::optional<double> delta;       // pollution index vs previous omega row
  std::optional<double> wall_time_s;
  double solver_residual = 0.0;
  bool failed = false;
  std::string message;
};

struct StudyResult {
  std::vector<RunResult> rows;
};

// Full pipeline for one parameter set: mesh, per-element local solves and
// spaces, DG assembly/solve, relative L2 error.
RunResult single_run(const RunConfig& cfg);

// Relative L2 error of u1 + u2 against the experiment's exact solution.
double relative_l2_error(const MeshPartition& mesh, const std::vector<GopwBasisSet>& spaces,
                         const std::vector<SpectralLocalSolution>& u1,
                         const std::vector<Eigen::VectorXcd>& u2, const Experiment& exp,
                         double omega, int quad_n1d, int threads);

// h-refinement sweep at fixed omega; rows are streamed to `out` (CSV, with
// header) as they complete when non-null.
StudyResult run_h_study(const RunConfig& base, const std::vector<int>& nx_list,
                        std::ostream* out = nullptr);

// omega sweep at fixed omega*h; nx per row is omega/omega_h rounded.
StudyResult run_pollution_study(const RunConfig& base, const std::vector<double>& omegas,
                                double omega_h, std::ostream* out = nullptr);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const RunResult& row);
std::string csv_of(const StudyResult& result);

// Applies the experiment pairing defaults (p from m and case) in place.
void apply_pairing_defaults(RunConfig& cfg);

}  // namespace gopw

#endif
