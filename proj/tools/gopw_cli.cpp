// Command-line driver for the GOPW Helmholtz solver: single runs,
// h-convergence and pollution studies, and single-element approximation
// (oracle) studies, all emitting CSV.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>
#include <vector>

#include "gopw/study.hpp"

namespace {

struct CommonOpts {
  std::string example = "1";
  int space_case = 2;
  int p = 0;
  int m = 5;
  int q = -1;
  int quad_points = 0;
  int threads = 0;
  std::string out = "-";
  bool no_timing = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->set_help_flag("--help", "print help");  // keep --h free for the mesh width
  cmd->add_option("--example", o.example, "experiment: 1, 2 or constant")
      ->check(CLI::IsMember({"1", "2", "constant", "example1", "example2"}));
  cmd->add_option("--case", o.space_case, "basis case: 1 or 2")->check(CLI::Range(1, 2));
  cmd->add_option("--p", o.p, "plane-wave directions (0: pairing default)");
  cmd->add_option("--m", o.m, "local spectral order");
  cmd->add_option("--q", o.q, "matching order override (-1: select from run parameters)");
  cmd->add_option("--quad-points", o.quad_points, "1D quadrature points override");
  cmd->add_option("--threads", o.threads, "worker threads (0: hardware)");
  cmd->add_option("--out", o.out, "CSV output path ('-': stdout)");
  cmd->add_flag("--no-timing", o.no_timing, "leave the wall_time_s column empty");
}

gopw::RunConfig to_config(const CommonOpts& o) {
  gopw::RunConfig cfg;
  cfg.experiment = (o.example == "1") ? "example1" : (o.example == "2") ? "example2" : o.example;
  cfg.space_case = o.space_case == 1 ? gopw::SpaceCase::one : gopw::SpaceCase::two;
  cfg.p = o.p;
  cfg.m = o.m;
  cfg.q = o.q;
  cfg.quad_n1d = o.quad_points;
  cfg.threads = o.threads;
  cfg.include_timing = !o.no_timing;
  return cfg;
}

struct OutStream {
  std::ofstream file;
  std::ostream* os = nullptr;
  explicit OutStream(const std::string& path) {
    if (path == "-") {
      os = &std::cout;
    } else {
      file.open(path);
      if (!file) throw CLI::ValidationError("--out", "cannot open " + path);
      os = &file;
    }
  }
};

std::vector<int> nx_from(const std::vector<int>& nx, const std::vector<double>& hs) {
  std::vector<int> out = nx;
  for (double h : hs) out.push_back(static_cast<int>(std::lround(1.0 / h)));
  if (out.empty()) throw CLI::ValidationError("--nx", "at least one mesh size is required");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric-optics plane wave (GOPW) Trefftz-DG solver for 2D Helmholtz problems"};
  app.require_subcommand(1);
  app.set_config("--config")->configurable(false);

  // ---- h-study ----
  CommonOpts h_opts;
  double h_omega = 32.0;
  std::vector<int> h_nx;
  std::vector<double> h_h;
  CLI::App* h_cmd = app.add_subcommand("h-study", "h-refinement sweep at fixed omega");
  add_common(h_cmd, h_opts);
  h_cmd->add_option("--omega", h_omega, "frequency");
  h_cmd->add_option("--nx", h_nx, "mesh sizes (elements per side), e.g. --nx 8 16 32");
  h_cmd->add_option("--h", h_h, "mesh widths as 1/nx, e.g. --h 0.125 0.0625");

  // ---- pollution-study ----
  CommonOpts p_opts;
  std::vector<double> p_omegas{16.0, 32.0, 64.0};
  double p_omegah = 1.0;
  CLI::App* p_cmd =
      app.add_subcommand("pollution-study", "omega sweep at fixed omega*h");
  add_common(p_cmd, p_opts);
  p_cmd->add_option("--omega", p_omegas, "frequencies, e.g. --omega 16 32 64");
  p_cmd->add_option("--omegah", p_omegah, "fixed omega*h product");

  // ---- oracle-study ----
  CommonOpts o_opts;
  std::vector<double> o_omegas{8.0, 16.0, 32.0, 64.0};
  double o_omegah = 1.0;
  double o_fixed_omega = 0.0;
  double o_cx = 0.5, o_cy = 0.5;
  CLI::App* o_cmd = app.add_subcommand(
      "oracle-study", "single-element least-squares approximation sweep");
  add_common(o_cmd, o_opts);
  o_cmd->add_option("--omega", o_omegas, "frequencies (paired with h = omegah/omega)");
  o_cmd->add_option("--omegah", o_omegah, "omega*h pairing");
  o_cmd->add_option("--fixed-omega", o_fixed_omega,
                    "fix omega and sweep h = omegah/omega_i instead");
  o_cmd->add_option("--cx", o_cx, "element center x");
  o_cmd->add_option("--cy", o_cy, "element center y");

  // ---- single-run ----
  CommonOpts s_opts;
  double s_omega = 32.0;
  int s_nx = 8;
  double s_h = 0.0;
  CLI::App* s_cmd = app.add_subcommand("single-run", "one full pipeline solve");
  add_common(s_cmd, s_opts);
  s_cmd->add_option("--omega", s_omega, "frequency");
  s_cmd->add_option("--nx", s_nx, "elements per side");
  s_cmd->add_option("--h", s_h, "mesh width (alternative to --nx)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (h_cmd->parsed()) {
      gopw::RunConfig cfg = to_config(h_opts);
      cfg.omega = h_omega;
      OutStream out(h_opts.out);
      const gopw::StudyResult res = gopw::run_h_study(cfg, nx_from(h_nx, h_h), out.os);
      for (const auto& row : res.rows)
        if (row.failed) std::cerr << "row failed: " << row.message << "\n";
    } else if (p_cmd->parsed()) {
      gopw::RunConfig cfg = to_config(p_opts);
      OutStream out(p_opts.out);
      const gopw::StudyResult res = gopw::run_pollution_study(cfg, p_omegas, p_omegah, out.os);
      for (const auto& row : res.rows)
        if (row.failed) std::cerr << "row failed: " << row.message << "\n";
    } else if (o_cmd->parsed()) {
      gopw::RunConfig cfg = to_config(o_opts);
      gopw::apply_pairing_defaults(cfg);
      const gopw::Experiment exp = gopw::make_experiment(cfg.experiment);
      OutStream out(o_opts.out);
      *out.os << "omega,h,p,q,case,linf_rel,l2_rel,order\n";
      double prev_err = 0.0, prev_h = 0.0;
      for (double omega_i : o_omegas) {
        const double omega = o_fixed_omega > 0.0 ? o_fixed_omega : omega_i;
        const double h = o_omegah / omega_i;
        const int n = (cfg.p - 1) / 2;
        const int q = cfg.q >= 0 ? cfg.q
                                 : gopw::select_q(n, omega, h, cfg.space_case,
                                                  gopw::QSelectMode::approximation);
        const gopw::Rect box{o_cx - h / 2, o_cx + h / 2, o_cy - h / 2, o_cy + h / 2};
        const gopw::GopwBasisSet bs =
            gopw::build_space(*exp.field, box, cfg.p, q, cfg.space_case, omega, h);
        const auto target = [&](gopw::Point r) {
          return std::exp(std::complex<double>(0.0, omega * gopw::example2_phases(r).phi[0]));
        };
        const gopw::OracleResult r = gopw::approximation_oracle(bs, box, target);
        char buf[256];
        const double linf = r.linf_error / r.linf_exact;
        const double l2 = r.l2_error / r.l2_exact;
        std::snprintf(buf, sizeof(buf), "%.5e,%.5e,%d,%d,%d,%.5e,%.5e,", omega, h, cfg.p, q,
                      static_cast<int>(cfg.space_case), linf, l2);
        *out.os << buf;
        if (prev_err > 0.0)
          *out.os << std::log(prev_err / linf) / std::log(prev_h / h);
        *out.os << "\n";
        prev_err = linf;
        prev_h = h;
      }
    } else if (s_cmd->parsed()) {
      gopw::RunConfig cfg = to_config(s_opts);
      cfg.omega = s_omega;
      cfg.nx = s_h > 0.0 ? static_cast<int>(std::lround(1.0 / s_h)) : s_nx;
      const gopw::RunResult row = gopw::single_run(cfg);
      OutStream out(s_opts.out);
      gopw::write_csv_header(*out.os);
      gopw::write_csv_row(*out.os, row);
      if (row.failed) {
        std::cerr << "run failed: " << row.message << "\n";
        return 1;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
