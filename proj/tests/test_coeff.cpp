#include "doctest.h"

#include <cmath>
#include <random>

#include "gopw/coefficient_field.hpp"

using namespace gopw;

TEST_CASE("constant field jets") {
  const ConstantField f(4.0);
  const RealPoly j = f.jet({0.7, -0.2}, 3);
  CHECK(j.degree() == 3);
  CHECK(j.coeff(0, 0) == 4.0);
  for (std::size_t k = 1; k < j.coeffs().size(); ++k) CHECK(j.coeffs()[k] == 0.0);
  CHECK_THROWS_AS(ConstantField(-1.0), std::domain_error);
}

TEST_CASE("gradient field closed-form jet") {
  const GradientField f;
  // value(0,0) = 1 + 2(0.1*0.1 + (-0.2)*0.1) = 0.98
  CHECK(f.value({0.0, 0.0}) == doctest::Approx(0.98).epsilon(1e-15));
  const RealPoly j = f.jet({0.0, 0.0}, 2);
  CHECK(j.coeff(0, 0) == doctest::Approx(0.98).epsilon(1e-15));
  CHECK(j.coeff(1, 0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(j.coeff(0, 1) == doctest::Approx(-0.4).epsilon(1e-15));
  CHECK(j.coeff(2, 0) == 0.0);
  CHECK(j.coeff(1, 1) == 0.0);
  CHECK(j.coeff(0, 2) == 0.0);
  // jets of any order have no terms beyond total degree 1
  const RealPoly j5 = f.jet({0.3, 0.9}, 5);
  for (int d = 2; d <= 5; ++d)
    for (int jj = 0; jj <= d; ++jj) CHECK(j5.coeff(d - jj, jj) == 0.0);
}

TEST_CASE("gaussian lens value at the center") {
  const GaussianLensField f;
  // c = 4/3 * 7/8 = 7/6, xi = 36/49
  CHECK(f.value({0.5, 0.5}) == doctest::Approx(36.0 / 49.0).epsilon(1e-14));
  CHECK(f.speed({0.5, 0.5}) == doctest::Approx(7.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("built-in jets agree with finite differences up to order 4") {
  const GaussianLensField lens;
  const GradientField grad;
  const std::vector<const CoefficientField*> fields{&lens, &grad};
  const std::vector<Point> pts{{0.31, 0.57}, {0.5, 0.5}, {0.12, 0.83}};
  const double h = 1e-3;
  // abs-sum of the order-6 stencil weights per derivative order; the oracle
  // cannot resolve below eps |f| S_r S_j / (h^{r+j} r! j!)
  const double S[5] = {1.0, 1.9, 6.1, 7.6, 34.2};
  const double fact[5] = {1, 1, 2, 6, 24};
  for (const CoefficientField* f : fields)
    for (Point r0 : pts) {
      const RealPoly exact = f->jet(r0, 4);
      const RealPoly fd =
          finite_difference_jet([&](Point r) { return f->value(r); }, r0, 4, h);
      for (int d = 0; d <= 4; ++d)
        for (int j = 0; j <= d; ++j) {
          const int r = d - j;
          const double a = exact.coeff(r, j);
          const double b = fd.coeff(r, j);
          const double floor =
              2e-16 * 1.5 * S[r] * S[j] / (std::pow(h, d) * fact[r] * fact[j]);
          CHECK(std::abs(a - b) <= 1e-5 * std::max(1.0, std::abs(a)) + floor);
        }
    }
}

TEST_CASE("lens jets behave as truncated Taylor expansions") {
  // |xi(r) - jet_n(r)| = O(|r-r0|^{n+1}): halving the offset shrinks the
  // defect by ~2^{n+1}
  const GaussianLensField f;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(0.15, 0.85);
  for (int trial = 0; trial < 50; ++trial) {
    const Point r0{dist(rng), dist(rng)};
    const RealPoly j3 = f.jet(r0, 3);
    const double d1 = 0.02, d2 = 0.01;
    const double e1 = std::abs(f.value({r0.x + d1, r0.y + d1}) - j3.evaluate({r0.x + d1, r0.y + d1}));
    const double e2 = std::abs(f.value({r0.x + d2, r0.y + d2}) - j3.evaluate({r0.x + d2, r0.y + d2}));
    if (e1 > 1e-12) CHECK(e2 <= e1 / 8.0 * 1.8);  // ~2^4 with slack
  }
}

TEST_CASE("jet coefficients are independent of the requested order") {
  const GaussianLensField f;
  const Point r0{0.4, 0.6};
  const RealPoly j2 = f.jet(r0, 2);
  const RealPoly j6 = f.jet(r0, 6);
  for (int d = 0; d <= 2; ++d)
    for (int j = 0; j <= d; ++j)
      CHECK(j2.coeff(d - j, j) == doctest::Approx(j6.coeff(d - j, j)).epsilon(1e-14));
}

TEST_CASE("value-only fields fall back to finite-difference jets") {
  const CallableField f([](Point r) { return 2.0 + std::sin(r.x) * std::cos(r.y); });
  const Point r0{0.2, 0.3};
  const RealPoly j = f.jet(r0, 2);
  CHECK(j.coeff(0, 0) == doctest::Approx(2.0 + std::sin(0.2) * std::cos(0.3)).epsilon(1e-10));
  CHECK(j.coeff(1, 0) == doctest::Approx(std::cos(0.2) * std::cos(0.3)).epsilon(1e-7));
  CHECK(j.coeff(0, 1) == doctest::Approx(-std::sin(0.2) * std::sin(0.3)).epsilon(1e-7));
  CHECK_THROWS_AS(f.jet(r0, 9), std::domain_error);
}

TEST_CASE("field registry") {
  CHECK(make_field("gradient")->value({0.0, 0.0}) == doctest::Approx(0.98));
  CHECK(make_field("constant", {2.5})->value({0.1, 0.1}) == 2.5);
  CHECK(make_field("gaussian_lens")->value({0.5, 0.5}) == doctest::Approx(36.0 / 49.0));
  CHECK_THROWS_AS(make_field("nope"), std::invalid_argument);
}
