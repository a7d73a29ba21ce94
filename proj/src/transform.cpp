#include "mapshape/transform.hpp"

#include <cmath>
#include <stdexcept>

namespace mapshape {

Eigen::Matrix2d Transform::inverse() const {
  if (std::abs(J) < 1e-14) throw std::runtime_error("singular transformation gradient");
  Eigen::Matrix2d inv;
  inv << Dtau(1, 1), -Dtau(0, 1), -Dtau(1, 0), Dtau(0, 0);
  return inv / J;
}

Transform transform_from_grad(const Eigen::Matrix2d& Dw) {
  Transform t;
  t.Dtau = Eigen::Matrix2d::Identity() + Dw;
  t.J = t.Dtau(0, 0) * t.Dtau(1, 1) - t.Dtau(0, 1) * t.Dtau(1, 0);
  return t;
}

Transform eval_transform(const Field& w, int element, const Eigen::Vector3d& bary) {
  if (w.space.value_dim != 2 || w.space.support != Support::Volume)
    throw std::invalid_argument("eval_transform expects a volume vector field");
  return transform_from_grad(eval_vector_grad(w, element, bary));
}

Eigen::Vector2d transformed_normal(const TriMesh& mesh, const Field& w, int loop_edge, double s) {
  int tri = -1;
  const Eigen::Vector3d bary = curve_point_barycentric(mesh, loop_edge, s, tri);
  const Transform t = eval_transform(w, tri, bary);
  const Eigen::Vector2d m = t.inverse().transpose() * mesh.design_edge_normal(loop_edge);
  const double len = m.norm();
  if (len < 1e-14) throw std::runtime_error("degenerate transformed normal");
  return m / len;
}

}  // namespace mapshape
