#include "gopw/phase.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace gopw {

namespace {

RealPoly grad_squared(const RealPoly& tau) {
  const RealPoly tx = differentiate(tau, Axis::x);
  const RealPoly ty = differentiate(tau, Axis::y);
  return add(multiply(tx, tx), multiply(ty, ty));
}

Eigen::VectorXd level_coeffs(const RealPoly& p, int d) {
  Eigen::VectorXd out(d + 1);
  for (int j = 0; j <= d; ++j) out[j] = p.coeff(d - j, j);
  return out;
}

}  // namespace

PhasePolynomial build_phase(const CoefficientField& field, Point r0, double theta, int q) {
  if (q < 1) throw std::invalid_argument("phase matching order q must be >= 1");
  const double xi0 = field.value(r0);
  if (xi0 <= 0.0) throw std::domain_error("squared slowness must be positive at the barycenter");

  const int m_tau = (q <= 2) ? q + 2 : q + 3;
  const RealPoly xi_jet = field.jet(r0, m_tau - 1);

  RealPoly tau(r0, m_tau);
  tau.at(1, 0) = std::sqrt(xi0) * std::cos(theta);
  tau.at(0, 1) = std::sqrt(xi0) * std::sin(theta);

  for (int k = 2; k <= m_tau; ++k) {
    // The degree-(k-1) part of |grad tau|^2 is affine in the level-k
    // coefficients; only the seeded level-1 terms enter the matrix, which
    // reproduces the k x (k+1) structure of the matching systems.
    const Eigen::VectorXd base = level_coeffs(grad_squared(tau), k - 1);
    Eigen::MatrixXd A(k, k + 1);
    for (int t = 0; t <= k; ++t) {
      RealPoly trial = tau;
      trial.at(k - t, t) += 1.0;
      A.col(t) = level_coeffs(grad_squared(trial), k - 1) - base;
    }
    const Eigen::VectorXd rhs = level_coeffs(xi_jet, k - 1) - base;

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
    cod.setThreshold(1e-10);
    if (cod.rank() < k)
      throw std::runtime_error("degenerate direction: phase level system is rank deficient");
    const Eigen::VectorXd sol = cod.solve(rhs);
    for (int t = 0; t <= k; ++t) tau.at(k - t, t) += sol[t];
  }

  return PhasePolynomial{tau, theta, q, m_tau};
}

double eikonal_residual(const PhasePolynomial& phase, const CoefficientField& field,
                        const Rect& element, int samples) {
  const RealPoly gs = grad_squared(phase.tau);
  if (samples <= 1) {
    const Point r = element.center();
    return std::abs(field.value(r) - gs.evaluate(r));
  }
  double worst = 0.0;
  const double s = 1.0 / (samples - 1);
  for (int i = 0; i < samples; ++i)
    for (int j = 0; j < samples; ++j) {
      const Point r{element.xmin + element.width() * i * s,
                    element.ymin + element.height() * j * s};
      worst = std::max(worst, std::abs(field.value(r) - gs.evaluate(r)));
    }
  return worst;
}

}  // namespace gopw
