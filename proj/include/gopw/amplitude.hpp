#ifndef GOPW_AMPLITUDE_HPP
#define GOPW_AMPLITUDE_HPP

#include <complex>
#include <vector>

#include "gopw/phase.hpp"
#include "gopw/polynomial.hpp"

namespace gopw {

// Amplitude a = sum_s a_s / (i omega)^s attached to one phase polynomial.
// The parts are frequency independent; collapse() folds in a concrete omega.
//
// Normalization convention (deterministic; the underlying systems fix
// dimensions but not representatives):
//   - every primary amplitude satisfies a(r0) = 1 via a_0(r0) = 1 and
//     a_s(r0) = 0 for s >= 1;
//   - the second amplitude of a direction pair is, for q = 1, the unit
//     null-space vector vanishing at r0 (so a(r0) = 0, matching the
//     constant-medium pair {1, d_perp.(r-r0)}), and for the recursive branch
//     the primary plus a unit null direction of the final level (a(r0) = 1).
// Unit vectors carry their largest-magnitude coefficient positive.
struct AmplitudePolynomial {
  std::vector<RealPoly> parts;  // parts[s] = a_s, degree q+1-s
  int q = 0;
  int n_q = 0;  // terminate index: q-2 (one amplitude) or q-1 (pair)

  ComplexPoly collapse(double omega) const;
  double value_at_center() const;  // limit omega -> infinity is a_0(r0); exact for all omega
};

struct AmplitudeBuildResult {
  std::vector<AmplitudePolynomial> amplitudes;  // one (n_q = q-2) or two (n_q = q-1)
  int last_level_nullity = 0;  // solution-space dimension of the final level system
};

// Direct construction for q in {1, 2}: a single polynomial of degree q+1 with
// Delta a = 0 and the sub-(q+1)-degree transport terms killed.  q = 1 yields a
// pair, q = 2 a single amplitude.
AmplitudeBuildResult build_amplitude_smallq(const PhasePolynomial& phase);

// Transport recursion for q >= 2 (the spaces' q >= 3 branch, also usable at
// q = 2 with n_q = 1): level s kills transport terms of degree < q_s plus the
// harmonicity constraints at r0; the final level enforces Delta a_{n_q} = 0
// identically.  omega/h enter only through the integers q_s; pass
// omega <= 0 or h <= 0 to use the omega*h >= 1 reduction q_s = q+1-s.
AmplitudeBuildResult build_amplitude_recursive(const PhasePolynomial& phase, int n_q,
                                               double omega = 0.0, double h = 0.0);

// Smallest positive integer t with h^t <= h^q omega^{s-1}; equals q+1-s when
// omega*h = 1 and that is also the fallback for unspecified omega or h.
int transport_kill_order(int q, int s, double omega, double h);

}  // namespace gopw

#endif
