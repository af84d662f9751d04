#ifndef GOPW_PHASE_HPP
#define GOPW_PHASE_HPP

#include "gopw/coefficient_field.hpp"
#include "gopw/polynomial.hpp"

namespace gopw {

// Real phase polynomial tau matching |grad tau|^2 to the Taylor jet of xi at
// the element barycenter, one per plane-wave direction angle.
struct PhasePolynomial {
  RealPoly tau;
  double direction_angle = 0.0;
  int q = 0;
  int m_tau = 0;  // q+2 for q <= 2, q+3 for q >= 3
};

// Seeds (lambda_10, lambda_01) = sqrt(xi(r0)) (cos theta, sin theta) and then
// fills each coefficient level k = 2..m_tau with the minimum-norm solution of
// the k x (k+1) system matching the degree-(k-1) coefficients of |grad tau|^2
// against the xi jet.
PhasePolynomial build_phase(const CoefficientField& field, Point r0, double theta, int q);

// Max over a samples x samples grid on K of |xi(r) - |grad tau(r)|^2|.
double eikonal_residual(const PhasePolynomial& phase, const CoefficientField& field,
                        const Rect& element, int samples);

}  // namespace gopw

#endif
