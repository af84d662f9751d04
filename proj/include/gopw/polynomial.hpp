#ifndef GOPW_POLYNOMIAL_HPP
#define GOPW_POLYNOMIAL_HPP

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <vector>

#include "gopw/geometry.hpp"
#include "gopw/multi_index.hpp"

namespace gopw {

// Bivariate polynomial in the shifted variables (x - x0, y - y0), stored as a
// dense coefficient vector in multi_index ordering.  Values are immutable in
// spirit: every operation returns a new polynomial.
template <typename Scalar>
class CenteredPolynomial {
 public:
  CenteredPolynomial() : center_{0.0, 0.0}, degree_(0), coeffs_(1, Scalar(0)) {}

  CenteredPolynomial(Point center, int degree)
      : center_(center), degree_(degree), coeffs_(multi_index::size(degree), Scalar(0)) {
    if (degree < 0) throw std::invalid_argument("polynomial degree must be >= 0");
  }

  CenteredPolynomial(Point center, int degree, std::vector<Scalar> coeffs)
      : center_(center), degree_(degree), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != multi_index::size(degree))
      throw std::invalid_argument("coefficient vector length does not match degree");
  }

  static CenteredPolynomial constant(Point center, Scalar value) {
    CenteredPolynomial p(center, 0);
    p.coeffs_[0] = value;
    return p;
  }

  Point center() const { return center_; }
  int degree() const { return degree_; }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }

  // Coefficient of (x-x0)^r (y-y0)^j; zero beyond the stored degree.
  Scalar coeff(int r, int j) const {
    if (r < 0 || j < 0 || r + j > degree_) return Scalar(0);
    return coeffs_[multi_index::flatten(r, j)];
  }

  Scalar& at(int r, int j) { return coeffs_[multi_index::flatten(r, j)]; }

  Scalar evaluate(Point r) const {
    const double dx = r.x - center_.x;
    const double dy = r.y - center_.y;
    // powers up to degree, then sum level blocks
    thread_local std::vector<double> px, py;
    px.assign(static_cast<std::size_t>(degree_) + 1, 1.0);
    py.assign(static_cast<std::size_t>(degree_) + 1, 1.0);
    for (int i = 1; i <= degree_; ++i) {
      px[i] = px[i - 1] * dx;
      py[i] = py[i - 1] * dy;
    }
    Scalar sum(0);
    std::size_t k = 0;
    for (int d = 0; d <= degree_; ++d)
      for (int j = 0; j <= d; ++j, ++k) sum += coeffs_[k] * (px[d - j] * py[j]);
    return sum;
  }

 private:
  Point center_;
  int degree_;
  std::vector<Scalar> coeffs_;
};

using RealPoly = CenteredPolynomial<double>;
using ComplexPoly = CenteredPolynomial<std::complex<double>>;

namespace detail {
inline void require_same_center(Point a, Point b) {
  if (a.x != b.x || a.y != b.y)
    throw std::invalid_argument("polynomial centers differ; caller must recenter");
}
}  // namespace detail

template <typename S>
CenteredPolynomial<S> add(const CenteredPolynomial<S>& p, const CenteredPolynomial<S>& q) {
  detail::require_same_center(p.center(), q.center());
  const int deg = std::max(p.degree(), q.degree());
  CenteredPolynomial<S> out(p.center(), deg);
  for (int d = 0; d <= deg; ++d)
    for (int j = 0; j <= d; ++j) out.at(d - j, j) = p.coeff(d - j, j) + q.coeff(d - j, j);
  return out;
}

template <typename S>
CenteredPolynomial<S> scale(const CenteredPolynomial<S>& p, S factor) {
  std::vector<S> c = p.coeffs();
  for (auto& v : c) v *= factor;
  return CenteredPolynomial<S>(p.center(), p.degree(), std::move(c));
}

template <typename S>
CenteredPolynomial<S> subtract(const CenteredPolynomial<S>& p, const CenteredPolynomial<S>& q) {
  return add(p, scale(q, S(-1)));
}

// Direct convolution; degrees here are tiny so no fancier scheme is warranted.
template <typename S>
CenteredPolynomial<S> multiply(const CenteredPolynomial<S>& p, const CenteredPolynomial<S>& q) {
  detail::require_same_center(p.center(), q.center());
  CenteredPolynomial<S> out(p.center(), p.degree() + q.degree());
  for (int d1 = 0; d1 <= p.degree(); ++d1)
    for (int j1 = 0; j1 <= d1; ++j1) {
      const S a = p.coeff(d1 - j1, j1);
      if (a == S(0)) continue;
      for (int d2 = 0; d2 <= q.degree(); ++d2)
        for (int j2 = 0; j2 <= d2; ++j2)
          out.at(d1 - j1 + d2 - j2, j1 + j2) += a * q.coeff(d2 - j2, j2);
    }
  return out;
}

enum class Axis { x, y };

template <typename S>
CenteredPolynomial<S> differentiate(const CenteredPolynomial<S>& p, Axis axis) {
  const int deg = std::max(p.degree() - 1, 0);
  CenteredPolynomial<S> out(p.center(), deg);
  for (int d = 1; d <= p.degree(); ++d)
    for (int j = 0; j <= d; ++j) {
      const int r = d - j;
      if (axis == Axis::x && r >= 1)
        out.at(r - 1, j) += S(static_cast<double>(r)) * p.coeff(r, j);
      if (axis == Axis::y && j >= 1)
        out.at(r, j - 1) += S(static_cast<double>(j)) * p.coeff(r, j);
    }
  return out;
}

template <typename S>
CenteredPolynomial<S> laplacian(const CenteredPolynomial<S>& p) {
  return add(differentiate(differentiate(p, Axis::x), Axis::x),
             differentiate(differentiate(p, Axis::y), Axis::y));
}

// Terms of total degree <= n; the remainder p - truncate(p, n) holds the rest.
template <typename S>
CenteredPolynomial<S> truncate(const CenteredPolynomial<S>& p, int n) {
  if (n < 0) throw std::invalid_argument("truncation order must be >= 0");
  if (n >= p.degree()) return p;
  CenteredPolynomial<S> out(p.center(), n);
  for (int d = 0; d <= n; ++d)
    for (int j = 0; j <= d; ++j) out.at(d - j, j) = p.coeff(d - j, j);
  return out;
}

inline ComplexPoly to_complex(const RealPoly& p) {
  std::vector<std::complex<double>> c(p.coeffs().begin(), p.coeffs().end());
  return ComplexPoly(p.center(), p.degree(), std::move(c));
}

}  // namespace gopw

#endif
