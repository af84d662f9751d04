#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "gopw/phase.hpp"

using namespace gopw;

namespace {

// xi = 1 + x, exact jets; small analytic test medium
class AffineField final : public CoefficientField {
 public:
  double value(Point r) const override { return 1.0 + r.x; }
  RealPoly jet(Point r0, int n) const override {
    RealPoly p(r0, n);
    p.at(0, 0) = 1.0 + r0.x;
    if (n >= 1) p.at(1, 0) = 1.0;
    return p;
  }
  int smoothness_order() const override { return 1000; }
};

double fit_slope(const std::vector<double>& hs, const std::vector<double>& errs) {
  // least-squares slope of log(err) vs log(h)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(hs.size());
  for (int i = 0; i < n; ++i) {
    const double x = std::log(hs[i]), y = std::log(errs[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Rect element_at(Point center, double h) {
  return Rect{center.x - h / 2, center.x + h / 2, center.y - h / 2, center.y + h / 2};
}

}  // namespace

TEST_CASE("constant medium: phase is the exact linear traveltime") {
  const ConstantField f(1.0);
  const PhasePolynomial ph = build_phase(f, {0.25, 0.75}, 0.0, 1);
  CHECK(ph.m_tau == 3);
  CHECK(ph.tau.coeff(0, 0) == 0.0);
  CHECK(ph.tau.coeff(1, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ph.tau.coeff(0, 1) == doctest::Approx(0.0).epsilon(1e-14));
  for (int d = 2; d <= ph.tau.degree(); ++d)
    for (int j = 0; j <= d; ++j) CHECK(std::abs(ph.tau.coeff(d - j, j)) < 1e-13);

  // rotational consistency for several angles and a non-unit xi
  const ConstantField f2(2.25);
  for (double theta : {0.3, 1.1, 2.9, 4.4}) {
    const PhasePolynomial p2 = build_phase(f2, {0.5, 0.5}, theta, 2);
    CHECK(p2.tau.coeff(1, 0) == doctest::Approx(1.5 * std::cos(theta)).epsilon(1e-13));
    CHECK(p2.tau.coeff(0, 1) == doctest::Approx(1.5 * std::sin(theta)).epsilon(1e-13));
    for (int d = 2; d <= p2.tau.degree(); ++d)
      for (int j = 0; j <= d; ++j) CHECK(std::abs(p2.tau.coeff(d - j, j)) < 1e-12);
  }
}

TEST_CASE("affine medium reproduces the hand-solved level-2 system") {
  // xi = 1 + x at r0 = (0,0), theta = 0, q = 1: level 1 gives (1, 0);
  // the level-2 min-norm solution is (1/4, 0, 0)
  const AffineField f;
  const PhasePolynomial ph = build_phase(f, {0.0, 0.0}, 0.0, 1);
  CHECK(ph.tau.coeff(1, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ph.tau.coeff(0, 1) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(ph.tau.coeff(2, 0) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::abs(ph.tau.coeff(1, 1)) < 1e-13);
  CHECK(std::abs(ph.tau.coeff(0, 2)) < 1e-13);
}

TEST_CASE("direction seeding at theta = pi/2") {
  const GaussianLensField f;
  const Point r0{0.4, 0.3};
  const PhasePolynomial ph = build_phase(f, r0, std::numbers::pi / 2, 1);
  CHECK(std::abs(ph.tau.coeff(1, 0)) < 1e-14);
  CHECK(ph.tau.coeff(0, 1) == doctest::Approx(std::sqrt(f.value(r0))).epsilon(1e-14));
}

TEST_CASE("invalid media are rejected") {
  const CallableField bad([](Point) { return -1.0; });
  CHECK_THROWS_AS(build_phase(bad, {0.5, 0.5}, 0.0, 1), std::domain_error);
}

TEST_CASE("level back-substitution matches the xi jet") {
  // substituting the solved coefficients back, the matched part of
  // |grad tau|^2 equals the xi jet coefficient by coefficient
  const GaussianLensField f;
  const Point r0{0.31, 0.57};
  for (int q : {1, 2, 3}) {
    const PhasePolynomial ph = build_phase(f, r0, 0.7, q);
    const RealPoly tx = differentiate(ph.tau, Axis::x);
    const RealPoly ty = differentiate(ph.tau, Axis::y);
    const RealPoly gs = add(multiply(tx, tx), multiply(ty, ty));
    const RealPoly jet = f.jet(r0, ph.m_tau - 1);
    for (int d = 0; d <= ph.m_tau - 1; ++d)
      for (int j = 0; j <= d; ++j) {
        const double a = gs.coeff(d - j, j);
        const double b = jet.coeff(d - j, j);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
      }
  }
}

TEST_CASE("eikonal residual is machine-zero for constant media") {
  const ConstantField f(1.7);
  const PhasePolynomial ph = build_phase(f, {0.5, 0.5}, 1.234, 1);
  CHECK(eikonal_residual(ph, f, element_at({0.5, 0.5}, 0.25), 17) <= 1e-13);
}

TEST_CASE("eikonal residual decays at order q+2") {
  const GradientField grad;
  const GaussianLensField lens;
  const Point c{0.31, 0.57};
  struct Case { const CoefficientField* f; int q; double target; };
  for (const auto& [f, q, target] : std::vector<Case>{{&grad, 1, 2.7}, {&lens, 2, 3.7}}) {
    std::vector<double> hs, errs;
    for (int nx : {8, 16, 32, 64}) {
      const double h = 1.0 / nx;
      const PhasePolynomial ph = build_phase(*f, c, 0.7, q);
      hs.push_back(h);
      errs.push_back(eikonal_residual(ph, *f, element_at(c, h), 25));
    }
    CHECK(fit_slope(hs, errs) >= target);
  }
}
