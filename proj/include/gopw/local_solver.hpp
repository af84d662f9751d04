#ifndef GOPW_LOCAL_SOLVER_HPP
#define GOPW_LOCAL_SOLVER_HPP

#include <complex>
#include <functional>

#include "gopw/coefficient_field.hpp"
#include "gopw/polynomial.hpp"
#include "gopw/quadrature.hpp"

namespace gopw {

using SourceFn = std::function<std::complex<double>(Point)>;

// Spectral-element solution of the nonhomogeneous local problem on a
// fictitious disc, stored as a complex polynomial centered at the disc.
struct SpectralLocalSolution {
  int element_id = -1;
  int m = 0;
  Disc disc;
  ComplexPoly u;  // degree m, radius scaling folded into the coefficients
  ComplexPoly u_x, u_y, u_lap;
  double residual = 0.0;  // relative residual of the dense solve

  std::complex<double> value(Point r) const { return u.evaluate(r); }
  std::pair<std::complex<double>, std::complex<double>> gradient(Point r) const {
    return {u_x.evaluate(r), u_y.evaluate(r)};
  }
  std::complex<double> lap(Point r) const { return u_lap.evaluate(r); }
};

// Assembles and solves, over the monomial basis ((x-xc)/R)^i ((y-yc)/R)^j of
// total degree <= m,
//   int_disc (grad u . grad conj(v) - kappa^2 u conj(v))
//     + i/R int_circle u conj(v) = int_disc f conj(v) [+ int_circle g conj(v)]
// with kappa^2 = omega^2 xi(r) evaluated pointwise.  The boundary functional
// g is a test hook for manufactured solutions; the production problem has
// homogeneous impedance data (g absent).
SpectralLocalSolution solve_local(const CoefficientField& field, const SourceFn& f,
                                  const Disc& disc, int m, double omega,
                                  int quad_override = 0, const SourceFn& boundary_g = nullptr);

}  // namespace gopw

#endif
