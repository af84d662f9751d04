#include "gopw/experiments.hpp"

#include <cmath>
#include <stdexcept>

namespace gopw {

namespace {

using Cplx = std::complex<double>;
constexpr Cplx I(0.0, 1.0);

struct LensDerivs {
  double c, cx, cy, clap;
};

LensDerivs lens_speed_derivs(Point r) {
  const double dx = r.x - 0.5, dy = r.y - 0.5;
  const double g = std::exp(-32.0 * (dx * dx + dy * dy));
  const double gx = -64.0 * dx * g;
  const double gy = -64.0 * dy * g;
  const double glap = (-128.0 + 4096.0 * (dx * dx + dy * dy)) * g;
  return {4.0 / 3.0 - g / 6.0, -gx / 6.0, -gy / 6.0, -glap / 6.0};
}

Experiment make_example1() {
  Experiment e;
  e.name = "example1";
  e.field = std::make_shared<GaussianLensField>();
  e.exact = [](Point r, double w) -> Cplx {
    return lens_speed_derivs(r).c * std::exp(I * (w * r.x * r.y));
  };
  e.exact_grad = [](Point r, double w) {
    const LensDerivs d = lens_speed_derivs(r);
    const Cplx E = std::exp(I * (w * r.x * r.y));
    return std::make_pair((d.cx + I * w * r.y * d.c) * E, (d.cy + I * w * r.x * d.c) * E);
  };
  e.exact_lap = [](Point r, double w) -> Cplx {
    const LensDerivs d = lens_speed_derivs(r);
    const Cplx E = std::exp(I * (w * r.x * r.y));
    return (d.clap + 2.0 * I * w * (r.y * d.cx + r.x * d.cy) -
            w * w * (r.x * r.x + r.y * r.y) * d.c) *
           E;
  };
  return e;
}

struct Phase2 {
  double phi;
  Point grad;
  double lap;
};

// Traveltime branch of the constant-gradient squared-slowness medium.  With
// dr = r - anchor, u = |dr|^2, cbar = c0 + G0.dr, D = sqrt(cbar^2 - |G0|^2 u),
// the ray parameter solves u = cbar s^2 - |G0|^2 s^4 / 4, giving
// s^2 = 2(cbar + eps D)/|G0|^2 and phi = cbar s - |G0|^2 s^3 / 6.
Phase2 gradient_phase(Point r, int branch) {
  const Point dr = r - GradientField::anchor;
  const Point g0 = GradientField::gradient_half;
  const double G = dot(g0, g0);
  const double u = dot(dr, dr);
  const double cbar = GradientField::c0 + dot(g0, dr);
  const double disc = cbar * cbar - G * u;
  if (disc < 0.0) throw std::domain_error("phase branch undefined: negative discriminant");
  const double D = std::sqrt(disc);
  const double eps = (branch == 1) ? -1.0 : 1.0;
  // cbar - D computed in cancellation-free form
  const double w = (eps < 0.0) ? G * u / (cbar + D) : cbar + D;
  const double s = std::sqrt(2.0 * w) / std::sqrt(G);

  Phase2 out;
  out.phi = cbar * s - G / 6.0 * s * s * s;
  out.grad = (1.0 / s) * dr + (0.5 * s) * g0;
  // grad s = (2 dr - G0 s^2) / (-2 eps s D)
  const Point grad_s = (-1.0 / (2.0 * eps * s * D)) * (2.0 * dr - (s * s) * g0);
  // lap phi = 2/s + grad s . (G0/2 - dr/s^2)
  out.lap = 2.0 / s + dot(grad_s, 0.5 * g0 - (1.0 / (s * s)) * dr);
  return out;
}

Experiment make_example2() {
  Experiment e;
  e.name = "example2";
  e.field = std::make_shared<GradientField>();

  // rational amplitude factors and their derivatives
  auto a1 = [](Point r) {
    const Cplx d = r.x * r.y + I;
    const Cplx v = 1.0 / d;
    const Cplx vx = -r.y / (d * d);
    const Cplx vy = -r.x / (d * d);
    const Cplx vlap = 2.0 * (r.x * r.x + r.y * r.y) / (d * d * d);
    return std::make_tuple(v, vx, vy, vlap);
  };
  auto a2 = [](Point r) {
    const Cplx d = r.x * r.x + r.y * r.y + I;
    const Cplx v = 1.0 / d;
    const Cplx vx = -2.0 * r.x / (d * d);
    const Cplx vy = -2.0 * r.y / (d * d);
    const Cplx vlap = -4.0 / (d * d) + 8.0 * (r.x * r.x + r.y * r.y) / (d * d * d);
    return std::make_tuple(v, vx, vy, vlap);
  };

  e.exact = [a1, a2](Point r, double w) -> Cplx {
    Cplx sum = 0.0;
    for (int j = 1; j <= 2; ++j) {
      const Phase2 p = gradient_phase(r, j);
      const auto [v, vx, vy, vlap] = (j == 1) ? a1(r) : a2(r);
      sum += v * std::exp(I * (w * p.phi));
    }
    return sum;
  };
  e.exact_grad = [a1, a2](Point r, double w) {
    Cplx gx = 0.0, gy = 0.0;
    for (int j = 1; j <= 2; ++j) {
      const Phase2 p = gradient_phase(r, j);
      const auto [v, vx, vy, vlap] = (j == 1) ? a1(r) : a2(r);
      const Cplx E = std::exp(I * (w * p.phi));
      gx += (vx + I * w * v * p.grad.x) * E;
      gy += (vy + I * w * v * p.grad.y) * E;
    }
    return std::make_pair(gx, gy);
  };
  e.exact_lap = [a1, a2](Point r, double w) -> Cplx {
    Cplx sum = 0.0;
    for (int j = 1; j <= 2; ++j) {
      const Phase2 p = gradient_phase(r, j);
      const auto [v, vx, vy, vlap] = (j == 1) ? a1(r) : a2(r);
      const Cplx E = std::exp(I * (w * p.phi));
      sum += (vlap + 2.0 * I * w * (vx * p.grad.x + vy * p.grad.y) + I * w * v * p.lap -
              w * w * v * dot(p.grad, p.grad)) *
             E;
    }
    return sum;
  };
  return e;
}

Experiment make_constant() {
  Experiment e;
  e.name = "constant";
  e.field = std::make_shared<ConstantField>(1.0);
  e.exact = [](Point r, double w) -> Cplx { return std::exp(I * (w * r.x)); };
  e.exact_grad = [](Point r, double w) {
    const Cplx u = std::exp(I * (w * r.x));
    return std::make_pair(I * w * u, Cplx(0.0));
  };
  e.exact_lap = [](Point r, double w) -> Cplx { return -w * w * std::exp(I * (w * r.x)); };
  return e;
}

}  // namespace

PhasePair example2_phases(Point r) {
  PhasePair out;
  for (int j = 1; j <= 2; ++j) {
    const Phase2 p = gradient_phase(r, j);
    out.phi[j - 1] = p.phi;
    out.grad[j - 1] = p.grad;
    out.lap[j - 1] = p.lap;
  }
  return out;
}

Experiment make_experiment(const std::string& name) {
  if (name == "example1" || name == "1") return make_example1();
  if (name == "example2" || name == "2") return make_example2();
  if (name == "constant" || name == "constant_sanity") return make_constant();
  throw std::invalid_argument("unknown experiment: " + name);
}

}  // namespace gopw
