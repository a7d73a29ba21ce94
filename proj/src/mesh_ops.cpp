#include "mapshape/mesh_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mapshape/quadrature.hpp"

namespace mapshape {

QualityReport mesh_quality(const TriMesh& mesh, const Field& w, int qdegree) {
  QualityReport rep;
  rep.min_jacobian = std::numeric_limits<double>::infinity();
  rep.min_angle = std::numeric_limits<double>::infinity();
  rep.max_aspect_ratio = 0.0;

  const auto& rule = triangle_rule(qdegree);
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    bool inverted = false;
    for (const auto& qp : rule) {
      const Transform t = eval_transform(w, e, qp.bary);
      rep.min_jacobian = std::min(rep.min_jacobian, t.J);
      if (t.J <= 0.0) inverted = true;
    }
    if (inverted) ++rep.n_inverted;

    // Angles and aspect ratio of the deformed triangle.
    Eigen::Vector2d p[3];
    for (int k = 0; k < 3; ++k) {
      const int v = mesh.triangles[e][k];
      p[k] = mesh.vertices[v] +
             Eigen::Vector2d(w.coeffs[w.space.dof(v, 0)], w.coeffs[w.space.dof(v, 1)]);
    }
    double lmax = 0.0;
    for (int k = 0; k < 3; ++k) {
      const Eigen::Vector2d u = p[(k + 1) % 3] - p[k];
      const Eigen::Vector2d v = p[(k + 2) % 3] - p[k];
      const double lu = u.norm(), lv = v.norm();
      lmax = std::max(lmax, lu);
      if (lu > 0.0 && lv > 0.0) {
        const double c = std::clamp(u.dot(v) / (lu * lv), -1.0, 1.0);
        rep.min_angle = std::min(rep.min_angle, std::acos(c));
      } else {
        rep.min_angle = 0.0;
      }
    }
    const double twice_area =
        std::abs((p[1] - p[0]).x() * (p[2] - p[0]).y() - (p[2] - p[0]).x() * (p[1] - p[0]).y());
    if (twice_area > 0.0 && lmax > 0.0)
      rep.max_aspect_ratio = std::max(rep.max_aspect_ratio, lmax / (twice_area / lmax));
    else
      rep.max_aspect_ratio = std::numeric_limits<double>::infinity();
  }
  return rep;
}

}  // namespace mapshape
