#include "gopw/basis.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gopw {

namespace {

BasisFunction make_function(const PhasePolynomial& phase, const AmplitudePolynomial& amp,
                            double omega) {
  BasisFunction f;
  f.tau = phase.tau;
  f.amp = amp.collapse(omega);
  f.tau_x = differentiate(f.tau, Axis::x);
  f.tau_y = differentiate(f.tau, Axis::y);
  f.tau_lap = laplacian(f.tau);
  f.tau_grad_sq = add(multiply(f.tau_x, f.tau_x), multiply(f.tau_y, f.tau_y));
  f.amp_x = differentiate(f.amp, Axis::x);
  f.amp_y = differentiate(f.amp, Axis::y);
  f.amp_lap = laplacian(f.amp);
  f.direction_angle = phase.direction_angle;
  return f;
}

}  // namespace

Complex GopwBasisSet::value(std::size_t idx, Point r) const {
  const BasisFunction& f = functions_.at(idx);
  const Complex e = std::exp(Complex(0.0, omega_ * f.tau.evaluate(r)));
  return f.amp.evaluate(r) * e;
}

std::pair<Complex, Complex> GopwBasisSet::gradient(std::size_t idx, Point r) const {
  const BasisFunction& f = functions_.at(idx);
  const Complex e = std::exp(Complex(0.0, omega_ * f.tau.evaluate(r)));
  const Complex a = f.amp.evaluate(r);
  const Complex iw(0.0, omega_);
  return {(f.amp_x.evaluate(r) + iw * a * f.tau_x.evaluate(r)) * e,
          (f.amp_y.evaluate(r) + iw * a * f.tau_y.evaluate(r)) * e};
}

Complex GopwBasisSet::lap(std::size_t idx, Point r) const { return eval_all(idx, r).lap; }

BasisEval GopwBasisSet::eval_all(std::size_t idx, Point r) const {
  const BasisFunction& f = functions_.at(idx);
  const Complex e = std::exp(Complex(0.0, omega_ * f.tau.evaluate(r)));
  const Complex a = f.amp.evaluate(r);
  const Complex ax = f.amp_x.evaluate(r);
  const Complex ay = f.amp_y.evaluate(r);
  const double tx = f.tau_x.evaluate(r);
  const double ty = f.tau_y.evaluate(r);
  const Complex iw(0.0, omega_);
  BasisEval out;
  out.value = a * e;
  out.grad_x = (ax + iw * a * tx) * e;
  out.grad_y = (ay + iw * a * ty) * e;
  // Delta(a e^{iw tau}) = (Delta a + 2 iw grad a.grad tau + iw a Delta tau
  //                        - w^2 a |grad tau|^2) e^{iw tau}
  out.lap = (f.amp_lap.evaluate(r) + 2.0 * iw * (ax * tx + ay * ty) +
             iw * a * f.tau_lap.evaluate(r) - omega_ * omega_ * a * f.tau_grad_sq.evaluate(r)) *
            e;
  return out;
}

int select_q(int n, double omega, double h, SpaceCase space_case, QSelectMode mode, int s,
             double c0) {
  if (omega <= 1.0 || h <= 0.0) throw std::invalid_argument("select_q requires omega > 1, h > 0");
  if (omega * h > c0)
    throw std::domain_error("resolution violation: omega*h exceeds the configured bound");
  const double log_inv_wh = std::log(1.0 / (omega * h));
  const int base = (space_case == SpaceCase::one) ? 2 : 1;
  if (mode == QSelectMode::approximation) {
    const int mult = (space_case == SpaceCase::one) ? (n - 4) : (2 * n - 4);
    const int bracket = static_cast<int>(std::floor(mult * log_inv_wh / std::log(omega)));
    return std::max(base, bracket);
  }
  if (s < 0) throw std::invalid_argument("dg-mode q selection needs the regularity index s");
  const int b1 = static_cast<int>(std::floor((s - 5) * log_inv_wh / std::log(omega)));
  const int b2 = static_cast<int>(std::floor((s + 0.5) * log_inv_wh / std::log(1.0 / h)));
  return std::max(base, std::max(b1, b2));
}

GopwBasisSet build_space(const CoefficientField& field, const Rect& element, int p, int q,
                         SpaceCase space_case, double omega, double h_hint) {
  if (p < 1) throw std::invalid_argument("need at least one plane-wave direction");
  if (space_case == SpaceCase::one && q < 2)
    throw std::invalid_argument("case 1 spaces require q >= 2");
  if (q < 1) throw std::invalid_argument("q must be >= 1");

  GopwBasisSet out;
  out.case_ = space_case;
  out.p_ = p;
  out.q_ = q;
  out.omega_ = omega;
  out.barycenter_ = element.center();

  for (int l = 0; l < p; ++l) {
    const double theta = 2.0 * std::numbers::pi * l / p;
    const PhasePolynomial phase = build_phase(field, out.barycenter_, theta, q);
    AmplitudeBuildResult amps;
    if (space_case == SpaceCase::one) {
      amps = (q == 2) ? build_amplitude_smallq(phase)
                      : build_amplitude_recursive(phase, q - 2, omega, h_hint);
    } else {
      amps = (q == 1) ? build_amplitude_smallq(phase)
                      : build_amplitude_recursive(phase, q - 1, omega, h_hint);
    }
    const std::size_t expected = (space_case == SpaceCase::one) ? 1 : 2;
    if (amps.amplitudes.size() != expected)
      throw std::runtime_error("amplitude construction returned the wrong pair size");
    for (const auto& a : amps.amplitudes)
      out.functions_.push_back(make_function(phase, a, omega));
  }
  return out;
}

Complex pde_residual(const GopwBasisSet& basis, std::size_t idx, Point r,
                     const CoefficientField& field) {
  const BasisEval e = basis.eval_all(idx, r);
  return e.lap + basis.omega() * basis.omega() * field.value(r) * e.value;
}

OracleResult approximation_oracle(const GopwBasisSet& basis, const Rect& element,
                                  const std::function<Complex(Point)>& exact,
                                  int grid_override) {
  const int g = grid_override > 0 ? grid_override : 4 * basis.q() + 12;
  const std::size_t npts = static_cast<std::size_t>(g) * g;
  const std::size_t nf = basis.size();

  Eigen::MatrixXcd A(npts, nf);
  Eigen::VectorXcd b(npts);
  std::size_t row = 0;
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j, ++row) {
      const Point r{element.xmin + element.width() * i / (g - 1),
                    element.ymin + element.height() * j / (g - 1)};
      for (std::size_t k = 0; k < nf; ++k) A(row, k) = basis.value(k, r);
      b[row] = exact(r);
    }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-13);
  const Eigen::VectorXcd coeffs = svd.solve(b);
  const Eigen::VectorXcd resid = A * coeffs - b;

  OracleResult out;
  out.linf_error = resid.cwiseAbs().maxCoeff();
  out.l2_error = std::sqrt(resid.squaredNorm() / npts * element.area());
  out.linf_exact = b.cwiseAbs().maxCoeff();
  out.l2_exact = std::sqrt(b.squaredNorm() / npts * element.area());
  out.coeffs.assign(coeffs.data(), coeffs.data() + coeffs.size());
  const auto& sv = svd.singularValues();
  out.ill_conditioned = sv.size() > 0 && sv[sv.size() - 1] < 1e-13 * sv[0];
  return out;
}

}  // namespace gopw
