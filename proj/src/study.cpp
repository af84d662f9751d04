#include "gopw/study.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "gopw/parallel.hpp"
#include "gopw/quadrature.hpp"

namespace gopw {

void apply_pairing_defaults(RunConfig& cfg) {
  if (cfg.p <= 0) cfg.p = (cfg.space_case == SpaceCase::one) ? 2 * cfg.m + 1 : cfg.m;
}

RunResult single_run(const RunConfig& cfg_in) {
  RunConfig cfg = cfg_in;
  apply_pairing_defaults(cfg);

  RunResult row;
  row.omega = cfg.omega;
  row.h = 1.0 / cfg.nx;
  row.p = cfg.p;
  row.m = cfg.m;
  row.space_case = static_cast<int>(cfg.space_case);

  try {
    const auto t0 = std::chrono::steady_clock::now();
    const Experiment exp = make_experiment(cfg.experiment);
    const CoefficientField& field = *exp.field;
    const MeshPartition mesh = build_mesh(cfg.nx, cfg.nx);
    const double h = mesh.h();
    const double omega = cfg.omega;

    const int n = (cfg.p - 1) / 2;
    int q = cfg.q;
    if (q < 0) {
      const int s = std::min(cfg.m + 1, cfg.space_case == SpaceCase::one ? n + 1 : 2 * n + 1);
      q = select_q(n, omega, h, cfg.space_case, QSelectMode::dg, s, cfg.c0_bound);
    }
    row.q = q;
    const int n1d = cfg.quad_n1d > 0 ? cfg.quad_n1d : default_n1d(omega, h, q, cfg.m);

    const std::size_t ne = mesh.elements().size();
    std::vector<SpectralLocalSolution> u1(ne);
    parallel_for(ne, cfg.threads, [&](std::size_t k) {
      u1[k] = solve_local(
          field, [&](Point r) { return exp.source(r, omega); }, mesh.fictitious_disc(k), cfg.m,
          omega);
      u1[k].element_id = static_cast<int>(k);
    });

    std::vector<GopwBasisSet> spaces(ne);
    parallel_for(ne, cfg.threads, [&](std::size_t k) {
      spaces[k] = build_space(field, mesh.elements()[k].box, cfg.p, q, cfg.space_case, omega, h);
    });

    DgParams params;
    params.eta = cfg.eta;
    params.quad_n1d = n1d;
    params.threads = cfg.threads;
    DgSystem sys = assemble(mesh, spaces, field, omega, params);
    sys.rhs = assemble_rhs(
        mesh, spaces, u1, field, [&](Point r) { return exp.source(r, omega); },
        [&](Point r, Point nrm) { return exp.boundary(r, nrm, omega); }, omega, params);

    DgSolveStats stats;
    const std::vector<Eigen::VectorXcd> u2 = solve(sys, &stats);
    row.dofs = static_cast<long>(ne) * static_cast<long>(spaces.front().size());
    row.solver_residual = stats.residual;
    row.err = relative_l2_error(mesh, spaces, u1, u2, exp, omega, n1d, cfg.threads);

    if (cfg.include_timing) {
      const auto t1 = std::chrono::steady_clock::now();
      row.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
    }
  } catch (const std::exception& e) {
    row.failed = true;
    row.message = e.what();
    row.err = std::nan("");
  }
  return row;
}

double relative_l2_error(const MeshPartition& mesh, const std::vector<GopwBasisSet>& spaces,
                         const std::vector<SpectralLocalSolution>& u1,
                         const std::vector<Eigen::VectorXcd>& u2, const Experiment& exp,
                         double omega, int quad_n1d, int threads) {
  const std::size_t ne = mesh.elements().size();
  std::vector<double> num(ne, 0.0), den(ne, 0.0);
  parallel_for(ne, threads, [&](std::size_t k) {
    const QuadRule rule = rect_rule(mesh.elements()[k].box, quad_n1d);
    double nsum = 0.0, dsum = 0.0;
    for (const auto& qp : rule) {
      std::complex<double> uh = u1[k].value(qp.r);
      for (std::size_t t = 0; t < spaces[k].size(); ++t)
        uh += u2[k][t] * spaces[k].value(t, qp.r);
      const std::complex<double> ue = exp.exact(qp.r, omega);
      nsum += qp.w * std::norm(ue - uh);
      dsum += qp.w * std::norm(ue);
    }
    num[k] = nsum;
    den[k] = dsum;
  });
  double nsum = 0.0, dsum = 0.0;
  for (std::size_t k = 0; k < ne; ++k) {
    nsum += num[k];
    dsum += den[k];
  }
  return std::sqrt(nsum / dsum);
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.5e", v);
  return buf;
}

}  // namespace

void write_csv_header(std::ostream& out) {
  out << "omega,h,p,q,m,case,dofs,err,order,delta,wall_time_s\n";
}

void write_csv_row(std::ostream& out, const RunResult& r) {
  out << fmt(r.omega) << ',' << fmt(r.h) << ',' << r.p << ',' << r.q << ',' << r.m << ','
      << r.space_case << ',' << r.dofs << ',' << fmt(r.err) << ',';
  if (r.order) out << fmt(*r.order);
  out << ',';
  if (r.delta) out << fmt(*r.delta);
  out << ',';
  if (r.wall_time_s) out << fmt(*r.wall_time_s);
  out << '\n';
}

std::string csv_of(const StudyResult& result) {
  std::ostringstream os;
  write_csv_header(os);
  for (const auto& row : result.rows) write_csv_row(os, row);
  return os.str();
}

StudyResult run_h_study(const RunConfig& base, const std::vector<int>& nx_list,
                        std::ostream* out) {
  StudyResult result;
  if (out != nullptr) write_csv_header(*out);
  for (int nx : nx_list) {
    RunConfig cfg = base;
    cfg.nx = nx;
    RunResult row = single_run(cfg);
    if (!result.rows.empty() && !row.failed && !result.rows.back().failed) {
      const RunResult& prev = result.rows.back();
      row.order = std::log(prev.err / row.err) / std::log(prev.h / row.h);
    }
    if (out != nullptr) {
      write_csv_row(*out, row);
      out->flush();
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

StudyResult run_pollution_study(const RunConfig& base, const std::vector<double>& omegas,
                                double omega_h, std::ostream* out) {
  StudyResult result;
  if (out != nullptr) write_csv_header(*out);
  for (double omega : omegas) {
    RunConfig cfg = base;
    cfg.omega = omega;
    cfg.nx = std::max(1, static_cast<int>(std::lround(omega / omega_h)));
    RunResult row = single_run(cfg);
    if (!result.rows.empty() && !row.failed && !result.rows.back().failed) {
      const RunResult& prev = result.rows.back();
      row.delta = std::log(row.err / prev.err) / std::log(row.omega / prev.omega);
    }
    if (out != nullptr) {
      write_csv_row(*out, row);
      out->flush();
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

}  // namespace gopw
