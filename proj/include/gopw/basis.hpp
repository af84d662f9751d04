#ifndef GOPW_BASIS_HPP
#define GOPW_BASIS_HPP

#include <complex>
#include <functional>
#include <vector>

#include "gopw/amplitude.hpp"
#include "gopw/coefficient_field.hpp"
#include "gopw/phase.hpp"

namespace gopw {

using Complex = std::complex<double>;

enum class SpaceCase { one = 1, two = 2 };
enum class QSelectMode { approximation, dg };

// One evaluable member a(r) e^{i omega tau(r)} with its derivative
// polynomials precomputed.
struct BasisFunction {
  RealPoly tau;
  ComplexPoly amp;
  // cached derivatives of tau and amp
  RealPoly tau_x, tau_y, tau_lap, tau_grad_sq;
  ComplexPoly amp_x, amp_y, amp_lap;
  double direction_angle = 0.0;
};

struct BasisEval {
  Complex value;
  Complex grad_x;
  Complex grad_y;
  Complex lap;
};

// Local Trefftz space on one element: p directions, one amplitude per
// direction (case 1) or an interleaved pair (case 2, ordering
// (l,1),(l,2),(l+1,1),...).
class GopwBasisSet {
 public:
  GopwBasisSet() = default;

  SpaceCase space_case() const { return case_; }
  int p() const { return p_; }
  int q() const { return q_; }
  double omega() const { return omega_; }
  Point barycenter() const { return barycenter_; }
  std::size_t size() const { return functions_.size(); }
  const BasisFunction& function(std::size_t idx) const { return functions_.at(idx); }

  Complex value(std::size_t idx, Point r) const;
  std::pair<Complex, Complex> gradient(std::size_t idx, Point r) const;
  Complex lap(std::size_t idx, Point r) const;
  BasisEval eval_all(std::size_t idx, Point r) const;

  friend GopwBasisSet build_space(const CoefficientField& field, const Rect& element, int p,
                                  int q, SpaceCase space_case, double omega, double h_hint);

 private:
  SpaceCase case_ = SpaceCase::two;
  int p_ = 0;
  int q_ = 0;
  double omega_ = 0.0;
  Point barycenter_;
  std::vector<BasisFunction> functions_;
};

// q per the approximation theorems (floor brackets):
//   case 1: max{2, [(n-4) ln (omega h)^-1 / ln omega]}
//   case 2: max{1, [(2n-4) ln (omega h)^-1 / ln omega]}
// dg mode takes the three-way max with the regularity index s:
//   max{base, [(s-5) ln (omega h)^-1 / ln omega], [(s+1/2) ln (omega h)^-1 / ln h^-1]}
// Throws when omega h exceeds the resolution bound c0.
int select_q(int n, double omega, double h, SpaceCase space_case, QSelectMode mode, int s = -1,
             double c0 = 8.0);

// Builds p phases at angles 2 pi (l-1)/p and the per-case amplitudes, then
// collapses each pair into an evaluable member.  h_hint (element size) only
// feeds the transport kill orders for the recursive branch; pass 0 for the
// omega*h >= 1 reduction.
GopwBasisSet build_space(const CoefficientField& field, const Rect& element, int p, int q,
                         SpaceCase space_case, double omega, double h_hint = 0.0);

// PDE residual (Delta + omega^2 xi) of one member at a point, with xi
// evaluated from the field.
Complex pde_residual(const GopwBasisSet& basis, std::size_t idx, Point r,
                     const CoefficientField& field);

struct OracleResult {
  double linf_error = 0.0;
  double l2_error = 0.0;
  double linf_exact = 0.0;
  double l2_exact = 0.0;
  std::vector<Complex> coeffs;
  bool ill_conditioned = false;  // conditioning warning, not a failure
};

// Least-squares best fit of `exact` by the span of the basis on a dense
// uniform sample grid ((4q+12)^2 points by default); the sampled errors bound
// the best-approximation error realized by any interpolant.
OracleResult approximation_oracle(const GopwBasisSet& basis, const Rect& element,
                                  const std::function<Complex(Point)>& exact,
                                  int grid_override = 0);

}  // namespace gopw

#endif
