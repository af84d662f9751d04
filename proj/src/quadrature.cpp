#include "gopw/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace gopw {

namespace {

std::vector<std::pair<double, double>> compute_gauss_legendre(int n) {
  // roots of P_n on [-1,1] by Newton, mapped to [0,1]
  std::vector<std::pair<double, double>> out(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // evaluate P_n and P_n' via the three-term recurrence
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    out[i] = {0.5 * (x + 1.0), 0.5 * w};
  }
  return out;
}

std::mutex cache_mutex;
std::map<int, std::vector<std::pair<double, double>>> cache;

}  // namespace

const std::vector<std::pair<double, double>>& gauss_legendre_01(int n) {
  if (n < 1) throw std::invalid_argument("gauss rule needs at least one point");
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

QuadRule rect_rule(const Rect& box, int n_1d) {
  const auto& g = gauss_legendre_01(n_1d);
  QuadRule rule;
  rule.reserve(static_cast<std::size_t>(n_1d) * n_1d);
  for (const auto& [tx, wx] : g)
    for (const auto& [ty, wy] : g)
      rule.push_back({{box.xmin + box.width() * tx, box.ymin + box.height() * ty},
                      wx * wy * box.area()});
  return rule;
}

QuadRule face_rule(Point a, Point b, int n_1d) {
  const auto& g = gauss_legendre_01(n_1d);
  const double len = norm(b - a);
  QuadRule rule;
  rule.reserve(n_1d);
  for (const auto& [t, w] : g) rule.push_back({a + t * (b - a), w * len});
  return rule;
}

QuadRule disc_rule(const Disc& disc, int n_r, int n_theta) {
  if (n_r < 1 || n_theta < 1) throw std::invalid_argument("disc rule needs positive counts");
  const auto& g = gauss_legendre_01(n_r);
  const double R = disc.radius;
  QuadRule rule;
  rule.reserve(static_cast<std::size_t>(n_r) * n_theta);
  for (const auto& [t, w] : g)
    for (int k = 0; k < n_theta; ++k) {
      const double th = 2.0 * std::numbers::pi * k / n_theta;
      rule.push_back({{disc.center.x + R * t * std::cos(th), disc.center.y + R * t * std::sin(th)},
                      R * R * t * w * 2.0 * std::numbers::pi / n_theta});
    }
  return rule;
}

QuadRule circle_rule(const Disc& disc, int n_theta) {
  const double R = disc.radius;
  QuadRule rule;
  rule.reserve(n_theta);
  for (int k = 0; k < n_theta; ++k) {
    const double th = 2.0 * std::numbers::pi * k / n_theta;
    rule.push_back({{disc.center.x + R * std::cos(th), disc.center.y + R * std::sin(th)},
                    2.0 * std::numbers::pi * R / n_theta});
  }
  return rule;
}

int default_n1d(double omega, double h, int q, int m) {
  return static_cast<int>(std::ceil(omega * h / 2.0)) + q + m + 6;
}

}  // namespace gopw
