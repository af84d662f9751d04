#ifndef GOPW_EXPERIMENTS_HPP
#define GOPW_EXPERIMENTS_HPP

#include <complex>
#include <memory>
#include <string>

#include "gopw/coefficient_field.hpp"

namespace gopw {

// Manufactured benchmark problem: exact solution with analytic derivatives,
// the source f = -Delta u - omega^2 xi u derived from it, and boundary data
// g = (d_n + i omega) u.
struct Experiment {
  std::string name;
  std::shared_ptr<CoefficientField> field;
  std::function<std::complex<double>(Point, double)> exact;                // u(r; omega)
  std::function<std::pair<std::complex<double>, std::complex<double>>(Point, double)> exact_grad;
  std::function<std::complex<double>(Point, double)> exact_lap;

  std::complex<double> source(Point r, double omega) const {
    return -exact_lap(r, omega) - omega * omega * field->value(r) * exact(r, omega);
  }
  std::complex<double> boundary(Point r, Point n, double omega) const {
    const auto [gx, gy] = exact_grad(r, omega);
    return gx * n.x + gy * n.y + std::complex<double>(0.0, omega) * exact(r, omega);
  }
};

// "example1": Gaussian-lens medium, u = c(x,y) e^{i omega x y}.
// "example2": constant-gradient squared slowness, two crossing waves
//             u = e^{i omega phi1}/(xy+i) + e^{i omega phi2}/(x^2+y^2+i).
// "constant": homogeneous medium xi = 1, u = e^{i omega x} (f = 0).
Experiment make_experiment(const std::string& name);

// The two traveltime branches of the constant-gradient medium, with analytic
// gradient and Laplacian; exact eikonal solutions |grad phi|^2 = xi.
struct PhasePair {
  double phi[2];
  Point grad[2];
  double lap[2];
};
PhasePair example2_phases(Point r);

}  // namespace gopw

#endif
