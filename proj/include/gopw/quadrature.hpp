#ifndef GOPW_QUADRATURE_HPP
#define GOPW_QUADRATURE_HPP

#include <vector>

#include "gopw/geometry.hpp"

namespace gopw {

struct QuadPoint {
  Point r;
  double w = 0.0;
};

using QuadRule = std::vector<QuadPoint>;

// 1D Gauss-Legendre nodes/weights on [0,1]; Newton iteration on the Legendre
// recurrence, cached per point count.
const std::vector<std::pair<double, double>>& gauss_legendre_01(int n);

// Tensor rule on a rectangle, exact for per-axis degree <= 2 n_1d - 1.
QuadRule rect_rule(const Rect& box, int n_1d);

// Gauss rule along a straight face segment.
QuadRule face_rule(Point a, Point b, int n_1d);

// Radial Gauss x uniform angular rule on a disc; weights carry the polar
// Jacobian.
QuadRule disc_rule(const Disc& disc, int n_r, int n_theta);

// Uniform rule on the boundary circle of a disc.
QuadRule circle_rule(const Disc& disc, int n_theta);

// Wavelength-resolving default count: ceil(omega h / 2) + q + m + 6.
int default_n1d(double omega, double h, int q, int m);

}  // namespace gopw

#endif
