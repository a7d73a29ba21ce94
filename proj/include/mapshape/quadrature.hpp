#pragma once

#include <vector>

#include <Eigen/Dense>

namespace mapshape {

struct TriQPoint {
  Eigen::Vector3d bary;  // barycentric coordinates (l0, l1, l2)
  double weight;         // reference-triangle weight; weights sum to 1/2
};

struct GaussPoint {
  double s;       // position in [0, 1]
  double weight;  // weights sum to 1
};

// Quadrature rule on the reference triangle, exact for polynomials of the
// requested degree. Degree 5 is the 7-point rule; higher degrees fall back to
// a collapsed tensor Gauss rule.
const std::vector<TriQPoint>& triangle_rule(int degree);

// Gauss-Legendre rule on [0, 1], exact for polynomials of the requested degree.
const std::vector<GaussPoint>& segment_rule(int degree);

}  // namespace mapshape
