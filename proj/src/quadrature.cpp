#include "mapshape/quadrature.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace mapshape {

namespace {

std::vector<TriQPoint> make_triangle_rule(int degree) {
  std::vector<TriQPoint> rule;
  if (degree <= 1) {
    rule.push_back({{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 0.5});
  } else if (degree <= 2) {
    // Midpoint rule, degree 2.
    for (int k = 0; k < 3; ++k) {
      Eigen::Vector3d b(0.5, 0.5, 0.5);
      b[k] = 0.0;
      rule.push_back({b, 0.5 / 3.0});
    }
  } else if (degree <= 5) {
    // 7-point degree-5 rule (Hammer/Strang-Fix).
    const double sqrt15 = std::sqrt(15.0);
    const double a = (6.0 + sqrt15) / 21.0, wa = (155.0 + sqrt15) / 2400.0;
    const double b = (6.0 - sqrt15) / 21.0, wb = (155.0 - sqrt15) / 2400.0;
    rule.push_back({{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 9.0 / 80.0});
    for (int k = 0; k < 3; ++k) {
      Eigen::Vector3d pa(a, a, a), pb(b, b, b);
      pa[k] = 1.0 - 2.0 * a;
      pb[k] = 1.0 - 2.0 * b;
      rule.push_back({pa, wa});
      rule.push_back({pb, wb});
    }
  } else {
    // Collapsed (Duffy) tensor Gauss rule: exact for degree d with
    // n = ceil((d + 2) / 2) points per direction.
    const int n = (degree + 3) / 2;
    const auto& gauss = segment_rule(2 * n - 1);
    for (const auto& gu : gauss)
      for (const auto& gv : gauss) {
        const double u = gu.s, v = gv.s;
        const double x = u, y = v * (1.0 - u);
        rule.push_back({{1.0 - x - y, x, y}, gu.weight * gv.weight * (1.0 - u)});
      }
  }
  return rule;
}

// Gauss-Legendre nodes on [-1, 1] by Newton iteration on Legendre polynomials.
std::vector<GaussPoint> make_segment_rule(int npoints) {
  std::vector<GaussPoint> rule(npoints);
  const int n = npoints;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule[i] = {0.5 * (1.0 - x), 0.5 * w};          // map to [0,1]
    rule[n - 1 - i] = {0.5 * (1.0 + x), 0.5 * w};
  }
  return rule;
}

}  // namespace

const std::vector<TriQPoint>& triangle_rule(int degree) {
  if (degree < 0) throw std::invalid_argument("quadrature degree must be >= 0");
  static std::map<int, std::vector<TriQPoint>> cache;
  auto it = cache.find(degree);
  if (it == cache.end()) it = cache.emplace(degree, make_triangle_rule(degree)).first;
  return it->second;
}

const std::vector<GaussPoint>& segment_rule(int degree) {
  if (degree < 0) throw std::invalid_argument("quadrature degree must be >= 0");
  const int n = degree / 2 + 1;  // n-point Gauss is exact to degree 2n-1
  static std::map<int, std::vector<GaussPoint>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_segment_rule(n)).first;
  return it->second;
}

}  // namespace mapshape
