#ifndef GOPW_COEFFICIENT_FIELD_HPP
#define GOPW_COEFFICIENT_FIELD_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gopw/polynomial.hpp"

namespace gopw {

// Squared slowness xi(r) = 1/c(r)^2 of the medium.  A field supplies point
// values and Taylor jets; built-in fields derive jets from closed forms via
// truncated Taylor arithmetic, while value-only fields fall back to
// Richardson-extrapolated finite differences (reduced accuracy, see jet()).
class CoefficientField {
 public:
  virtual ~CoefficientField() = default;

  virtual double value(Point r) const = 0;

  // Degree-n Taylor polynomial of xi at r0.  Throws if n exceeds
  // smoothness_order().  The default implementation differentiates value()
  // numerically and is accurate only to a few digits for n up to 4.
  virtual RealPoly jet(Point r0, int n) const;

  virtual int smoothness_order() const { return 4; }
};

class ConstantField final : public CoefficientField {
 public:
  explicit ConstantField(double xi0);
  double value(Point) const override { return xi0_; }
  RealPoly jet(Point r0, int n) const override;
  int smoothness_order() const override { return 1000; }

 private:
  double xi0_;
};

// c(x,y) = 4/3 (1 - 1/8 exp(-32((x-1/2)^2 + (y-1/2)^2))), xi = 1/c^2.
class GaussianLensField final : public CoefficientField {
 public:
  double value(Point r) const override;
  RealPoly jet(Point r0, int n) const override;
  int smoothness_order() const override { return 60; }
  double speed(Point r) const;
};

// xi(r) = c0^2 + 2 G0.(r - anchor) with c0 = 1, G0 = (0.1, -0.2),
// anchor = (-0.1, -0.1).
class GradientField final : public CoefficientField {
 public:
  double value(Point r) const override;
  RealPoly jet(Point r0, int n) const override;
  int smoothness_order() const override { return 1000; }

  static constexpr double c0 = 1.0;
  static constexpr Point gradient_half{0.1, -0.2};  // G0
  static constexpr Point anchor{-0.1, -0.1};
};

// Wraps a plain value callable; jets come from the finite-difference fallback.
class CallableField final : public CoefficientField {
 public:
  explicit CallableField(std::function<double(Point)> f) : f_(std::move(f)) {}
  double value(Point r) const override { return f_(r); }

 private:
  std::function<double(Point)> f_;
};

// Field registry for CLI/config selection ("constant", "gaussian_lens",
// "gradient"); params are ignored except for constant's xi0.
std::unique_ptr<CoefficientField> make_field(const std::string& name,
                                             const std::vector<double>& params = {});

// Truncated Taylor-series arithmetic on centered polynomials, used to push
// jets through composed closed forms (exp, reciprocal).
namespace jet_math {
RealPoly truncated_multiply(const RealPoly& p, const RealPoly& q, int n);
RealPoly exp_jet(const RealPoly& p, int n);
RealPoly reciprocal_jet(const RealPoly& p, int n);
}  // namespace jet_math

// Finite-difference Taylor coefficients of a scalar callable; the shared
// engine behind CoefficientField's fallback jets and test cross-checks.
RealPoly finite_difference_jet(const std::function<double(Point)>& f, Point r0, int n,
                               double step = 1e-3);

}  // namespace gopw

#endif
