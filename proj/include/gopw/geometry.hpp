#ifndef GOPW_GEOMETRY_HPP
#define GOPW_GEOMETRY_HPP

#include <cmath>

namespace gopw {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point a) { return std::sqrt(dot(a, a)); }

// Axis-aligned rectangle, used for elements and bounding boxes.
struct Rect {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;

  Point center() const { return {0.5 * (xmin + xmax), 0.5 * (ymin + ymax)}; }
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }
  bool contains(Point r, double tol = 0.0) const {
    return r.x >= xmin - tol && r.x <= xmax + tol && r.y >= ymin - tol && r.y <= ymax + tol;
  }
};

struct Disc {
  Point center;
  double radius = 0.0;
};

}  // namespace gopw

#endif
