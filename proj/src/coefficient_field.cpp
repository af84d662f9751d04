#include "gopw/coefficient_field.hpp"

#include <cmath>
#include <stdexcept>

namespace gopw {

namespace jet_math {

RealPoly truncated_multiply(const RealPoly& p, const RealPoly& q, int n) {
  return truncate(multiply(p, q), n);
}

// exp(p) = e^{p(r0)} sum_k phat^k / k! with phat the zero-constant part;
// phat^k has minimum degree k, so the sum terminates at k = n.
RealPoly exp_jet(const RealPoly& p, int n) {
  const double p0 = p.coeff(0, 0);
  RealPoly phat = truncate(p, n);
  phat.at(0, 0) = 0.0;
  RealPoly out = RealPoly::constant(p.center(), 1.0);
  RealPoly term = out;
  for (int k = 1; k <= n; ++k) {
    term = scale(truncated_multiply(term, phat, n), 1.0 / k);
    out = add(out, term);
  }
  return scale(out, std::exp(p0));
}

// 1/p via the geometric series around the constant term.
RealPoly reciprocal_jet(const RealPoly& p, int n) {
  const double w0 = p.coeff(0, 0);
  if (w0 == 0.0) throw std::domain_error("reciprocal jet of polynomial with zero constant term");
  RealPoly u = scale(truncate(p, n), -1.0 / w0);
  u.at(0, 0) = 0.0;
  RealPoly out = RealPoly::constant(p.center(), 1.0);
  RealPoly term = out;
  for (int k = 1; k <= n; ++k) {
    term = truncated_multiply(term, u, n);
    out = add(out, term);
  }
  return scale(out, 1.0 / w0);
}

}  // namespace jet_math

namespace {

// Central-difference weights for d^k/dx^k, sixth-order accurate.
// Offsets are -4..4 in units of the step.
const double* central_weights(int k) {
  static const double w0[9] = {0, 0, 0, 0, 1, 0, 0, 0, 0};
  static const double w1[9] = {0, -1. / 60, 3. / 20, -3. / 4, 0, 3. / 4, -3. / 20, 1. / 60, 0};
  static const double w2[9] = {0,       1. / 90, -3. / 20, 3. / 2, -49. / 18,
                               3. / 2, -3. / 20, 1. / 90,  0};
  static const double w3[9] = {-7. / 240,  3. / 10,    -169. / 120, 61. / 30, 0,
                               -61. / 30, 169. / 120, -3. / 10,    7. / 240};
  static const double w4[9] = {7. / 240,   -2. / 5,   169. / 60, -122. / 15, 91. / 8,
                               -122. / 15, 169. / 60, -2. / 5,   7. / 240};
  switch (k) {
    case 0: return w0;
    case 1: return w1;
    case 2: return w2;
    case 3: return w3;
    case 4: return w4;
    default: throw std::domain_error("finite-difference jets support derivative order <= 4");
  }
}

double fd_mixed_derivative(const std::function<double(Point)>& f, Point r0, int kx, int ky,
                           double hx, double hy) {
  const double* wx = central_weights(kx);
  const double* wy = central_weights(ky);
  double sum = 0.0;
  for (int i = -4; i <= 4; ++i) {
    if (wx[i + 4] == 0.0) continue;
    for (int j = -4; j <= 4; ++j) {
      if (wy[j + 4] == 0.0) continue;
      sum += wx[i + 4] * wy[j + 4] * f({r0.x + i * hx, r0.y + j * hy});
    }
  }
  return sum / (std::pow(hx, kx) * std::pow(hy, ky));
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

RealPoly finite_difference_jet(const std::function<double(Point)>& f, Point r0, int n,
                               double step) {
  if (n > 4)
    throw std::domain_error("finite-difference jets are limited to order 4");
  RealPoly out(r0, n);
  for (int d = 0; d <= n; ++d)
    for (int j = 0; j <= d; ++j) {
      const int r = d - j;
      // Richardson extrapolation over steps h and 2h kills the O(h^6) term
      // without the roundoff blow-up a halved step would bring.
      const double c1 = fd_mixed_derivative(f, r0, r, j, step, step);
      const double c2 = fd_mixed_derivative(f, r0, r, j, 2 * step, 2 * step);
      const double extrap = (64.0 * c1 - c2) / 63.0;
      out.at(r, j) = extrap / (factorial(r) * factorial(j));
    }
  return out;
}

RealPoly CoefficientField::jet(Point r0, int n) const {
  if (n > smoothness_order())
    throw std::domain_error("requested jet order exceeds the field's smoothness order");
  return finite_difference_jet([this](Point r) { return value(r); }, r0, n);
}

ConstantField::ConstantField(double xi0) : xi0_(xi0) {
  if (xi0 <= 0.0) throw std::domain_error("constant squared slowness must be positive");
}

RealPoly ConstantField::jet(Point r0, int n) const {
  RealPoly out(r0, n);
  out.at(0, 0) = xi0_;
  return out;
}

double GaussianLensField::speed(Point r) const {
  const double dx = r.x - 0.5, dy = r.y - 0.5;
  return 4.0 / 3.0 * (1.0 - 0.125 * std::exp(-32.0 * (dx * dx + dy * dy)));
}

double GaussianLensField::value(Point r) const {
  const double c = speed(r);
  return 1.0 / (c * c);
}

RealPoly GaussianLensField::jet(Point r0, int n) const {
  if (n > smoothness_order())
    throw std::domain_error("requested jet order exceeds the field's smoothness order");
  // g = -32((x-1/2)^2 + (y-1/2)^2) written in coordinates centered at r0
  const double ax = r0.x - 0.5, ay = r0.y - 0.5;
  RealPoly g(r0, std::max(n, 2));
  g.at(0, 0) = -32.0 * (ax * ax + ay * ay);
  if (g.degree() >= 1) {
    g.at(1, 0) = -64.0 * ax;
    g.at(0, 1) = -64.0 * ay;
  }
  if (g.degree() >= 2) {
    g.at(2, 0) = -32.0;
    g.at(0, 2) = -32.0;
  }
  g = truncate(g, n);
  const RealPoly e = jet_math::exp_jet(g, n);
  RealPoly c = add(RealPoly::constant(r0, 4.0 / 3.0), scale(e, -1.0 / 6.0));
  const RealPoly c2 = jet_math::truncated_multiply(c, c, n);
  return jet_math::reciprocal_jet(c2, n);
}

double GradientField::value(Point r) const {
  return c0 * c0 + 2.0 * dot(gradient_half, r - anchor);
}

RealPoly GradientField::jet(Point r0, int n) const {
  RealPoly out(r0, n);
  out.at(0, 0) = value(r0);
  if (n >= 1) {
    out.at(1, 0) = 2.0 * gradient_half.x;
    out.at(0, 1) = 2.0 * gradient_half.y;
  }
  return out;
}

std::unique_ptr<CoefficientField> make_field(const std::string& name,
                                             const std::vector<double>& params) {
  if (name == "constant") {
    const double xi0 = params.empty() ? 1.0 : params[0];
    return std::make_unique<ConstantField>(xi0);
  }
  if (name == "gaussian_lens") return std::make_unique<GaussianLensField>();
  if (name == "gradient") return std::make_unique<GradientField>();
  throw std::invalid_argument("unknown coefficient field: " + name);
}

}  // namespace gopw
