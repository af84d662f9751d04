#include "gopw/local_solver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace gopw {

namespace {

// values and gradients of the scaled monomials at one point
void monomial_eval(const Disc& disc, int m, Point r, std::vector<double>& val,
                   std::vector<double>& gx, std::vector<double>& gy) {
  const double R = disc.radius;
  const double sx = (r.x - disc.center.x) / R;
  const double sy = (r.y - disc.center.y) / R;
  std::vector<double> px(m + 1, 1.0), py(m + 1, 1.0);
  for (int i = 1; i <= m; ++i) {
    px[i] = px[i - 1] * sx;
    py[i] = py[i - 1] * sy;
  }
  const std::size_t nd = multi_index::size(m);
  val.resize(nd);
  gx.resize(nd);
  gy.resize(nd);
  std::size_t k = 0;
  for (int d = 0; d <= m; ++d)
    for (int j = 0; j <= d; ++j, ++k) {
      const int i = d - j;
      val[k] = px[i] * py[j];
      gx[k] = i > 0 ? i * px[i - 1] * py[j] / R : 0.0;
      gy[k] = j > 0 ? j * px[i] * py[j - 1] / R : 0.0;
    }
}

}  // namespace

SpectralLocalSolution solve_local(const CoefficientField& field, const SourceFn& f,
                                  const Disc& disc, int m, double omega, int quad_override,
                                  const SourceFn& boundary_g) {
  if (m < 2) throw std::invalid_argument("local spectral order m must be >= 2");
  const std::size_t nd = multi_index::size(m);
  using Cplx = std::complex<double>;

  const int n_r = quad_override > 0
                      ? quad_override
                      : m + 6 + static_cast<int>(std::ceil(omega * disc.radius));
  const int n_theta = 4 * n_r;
  const QuadRule vol = disc_rule(disc, n_r, n_theta);
  const QuadRule bdry = circle_rule(disc, n_theta);

  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(nd, nd);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(nd);

  std::vector<double> val, gx, gy;
  for (const auto& qp : vol) {
    monomial_eval(disc, m, qp.r, val, gx, gy);
    const double kap2 = omega * omega * field.value(qp.r);
    const Cplx fv = f(qp.r);
    for (std::size_t a = 0; a < nd; ++a) {
      rhs[a] += qp.w * fv * val[a];
      for (std::size_t b = 0; b < nd; ++b)
        A(a, b) += qp.w * (gx[b] * gx[a] + gy[b] * gy[a] - kap2 * val[b] * val[a]);
    }
  }
  const Cplx i_over_r(0.0, 1.0 / disc.radius);
  for (const auto& qp : bdry) {
    monomial_eval(disc, m, qp.r, val, gx, gy);
    const Cplx gv = boundary_g ? boundary_g(qp.r) : Cplx(0.0);
    for (std::size_t a = 0; a < nd; ++a) {
      if (boundary_g) rhs[a] += qp.w * gv * val[a];
      for (std::size_t b = 0; b < nd; ++b) A(a, b) += qp.w * i_over_r * val[b] * val[a];
    }
  }

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  const Eigen::VectorXcd coeffs = lu.solve(rhs);
  const double rhs_norm = rhs.norm();
  const double resid = rhs_norm > 0.0 ? (A * coeffs - rhs).norm() / rhs_norm : 0.0;
  if (!coeffs.allFinite()) throw std::runtime_error("local spectral solve produced non-finite values");

  SpectralLocalSolution sol;
  sol.m = m;
  sol.disc = disc;
  sol.residual = resid;
  ComplexPoly u(disc.center, m);
  std::size_t k = 0;
  for (int d = 0; d <= m; ++d)
    for (int j = 0; j <= d; ++j, ++k) u.at(d - j, j) = coeffs[k] / std::pow(disc.radius, d);
  sol.u = u;
  sol.u_x = differentiate(u, Axis::x);
  sol.u_y = differentiate(u, Axis::y);
  sol.u_lap = laplacian(u);
  return sol;
}

}  // namespace gopw
