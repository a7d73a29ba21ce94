#include "mapshape/spaces.hpp"

#include <cmath>

namespace mapshape {

void FESpace::element_nodes(int e, int* out) const {
  if (support == Support::Volume) {
    const auto& tri = mesh->triangles[e];
    out[0] = tri[0];
    out[1] = tri[1];
    out[2] = tri[2];
    if (degree == 2) {
      const int nv = mesh->n_vertices();
      for (int k = 0; k < 3; ++k) out[3 + k] = nv + mesh->tri_edges[e][k];
    }
  } else {
    const int m = mesh->n_design_edges();
    out[0] = e;
    out[1] = (e + 1) % m;
  }
}

Eigen::Vector2d FESpace::node_position(int node) const {
  if (support == Support::Curve) return mesh->vertices[mesh->design_loop[node]];
  const int nv = mesh->n_vertices();
  if (node < nv) return mesh->vertices[node];
  const auto& e = mesh->edges[node - nv];
  return 0.5 * (mesh->vertices[e[0]] + mesh->vertices[e[1]]);
}

FESpace make_volume_space(const TriMesh& mesh, int degree, int value_dim) {
  if (degree != 1 && degree != 2) throw std::invalid_argument("degree must be 1 or 2");
  if (value_dim != 1 && value_dim != 2) throw std::invalid_argument("value_dim must be 1 or 2");
  FESpace s;
  s.mesh = &mesh;
  s.degree = degree;
  s.value_dim = value_dim;
  s.support = Support::Volume;
  s.n_scalar_nodes = mesh.n_vertices() + (degree == 2 ? mesh.n_edges() : 0);
  s.n_dofs = s.n_scalar_nodes * value_dim;
  return s;
}

FESpace make_curve_space(const TriMesh& mesh, int value_dim) {
  if (mesh.n_design_edges() == 0)
    throw std::invalid_argument("mesh has no design boundary");
  FESpace s;
  s.mesh = &mesh;
  s.degree = 1;
  s.value_dim = value_dim;
  s.support = Support::Curve;
  s.n_scalar_nodes = mesh.n_design_edges();
  s.n_dofs = s.n_scalar_nodes * value_dim;
  return s;
}

bool same_space(const FESpace& a, const FESpace& b) {
  return a.mesh == b.mesh && a.degree == b.degree && a.value_dim == b.value_dim &&
         a.support == b.support;
}

void Field::check_finite() const {
  if (!coeffs.allFinite()) throw std::runtime_error("field has non-finite coefficients");
}

Field interpolate(const FESpace& space,
                  const std::function<double(const Eigen::Vector2d&)>& f) {
  if (space.value_dim != 1) throw std::invalid_argument("scalar function on vector space");
  Field out(space);
  for (int n = 0; n < space.n_scalar_nodes; ++n) out.coeffs[n] = f(space.node_position(n));
  return out;
}

Field interpolate(const FESpace& space,
                  const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>& f) {
  if (space.value_dim != 2) throw std::invalid_argument("vector function on scalar space");
  Field out(space);
  for (int n = 0; n < space.n_scalar_nodes; ++n) {
    const Eigen::Vector2d v = f(space.node_position(n));
    out.coeffs[space.dof(n, 0)] = v.x();
    out.coeffs[space.dof(n, 1)] = v.y();
  }
  return out;
}

void p1_shape(const Eigen::Vector3d& b, double value[3]) {
  value[0] = b[0];
  value[1] = b[1];
  value[2] = b[2];
}

void p2_shape(const Eigen::Vector3d& b, double value[6]) {
  for (int k = 0; k < 3; ++k) value[k] = b[k] * (2.0 * b[k] - 1.0);
  // Edge node k sits opposite vertex k, i.e. between the other two vertices.
  value[3] = 4.0 * b[1] * b[2];
  value[4] = 4.0 * b[2] * b[0];
  value[5] = 4.0 * b[0] * b[1];
}

void p1_ref_grad(Eigen::Vector2d grad[3]) {
  grad[0] = {-1.0, -1.0};
  grad[1] = {1.0, 0.0};
  grad[2] = {0.0, 1.0};
}

void p2_ref_grad(const Eigen::Vector3d& b, Eigen::Vector2d grad[6]) {
  Eigen::Vector2d gl[3];
  p1_ref_grad(gl);
  for (int k = 0; k < 3; ++k) grad[k] = (4.0 * b[k] - 1.0) * gl[k];
  grad[3] = 4.0 * (b[1] * gl[2] + b[2] * gl[1]);
  grad[4] = 4.0 * (b[2] * gl[0] + b[0] * gl[2]);
  grad[5] = 4.0 * (b[0] * gl[1] + b[1] * gl[0]);
}

TriGeom tri_geom(const TriMesh& mesh, int t) {
  const auto& tri = mesh.triangles[t];
  TriGeom g;
  g.p0 = mesh.vertices[tri[0]];
  g.B.col(0) = mesh.vertices[tri[1]] - g.p0;
  g.B.col(1) = mesh.vertices[tri[2]] - g.p0;
  g.detB = g.B(0, 0) * g.B(1, 1) - g.B(0, 1) * g.B(1, 0);
  Eigen::Matrix2d inv;
  inv << g.B(1, 1), -g.B(0, 1), -g.B(1, 0), g.B(0, 0);
  inv /= g.detB;
  g.invBT = inv.transpose();
  return g;
}

Eigen::Vector3d curve_point_barycentric(const TriMesh& mesh, int loop_edge, double s, int& tri) {
  const auto [a, b] = mesh.design_edge_vertices(loop_edge);
  const auto& be = mesh.boundary_edges[mesh.design_edge_index[loop_edge]];
  tri = be.tri;
  const auto& t = mesh.triangles[tri];
  Eigen::Vector3d bary = Eigen::Vector3d::Zero();
  for (int k = 0; k < 3; ++k) {
    if (t[k] == a) bary[k] = 1.0 - s;
    if (t[k] == b) bary[k] = s;
  }
  return bary;
}

double eval_scalar(const Field& f, int element, const Eigen::Vector3d& bary) {
  const FESpace& s = f.space;
  int nodes[6];
  s.element_nodes(element, nodes);
  double phi[6];
  if (s.degree == 1)
    p1_shape(bary, phi);
  else
    p2_shape(bary, phi);
  double v = 0.0;
  for (int k = 0; k < s.nodes_per_element(); ++k) v += phi[k] * f.coeffs[nodes[k]];
  return v;
}

Eigen::Vector2d eval_vector(const Field& f, int element, const Eigen::Vector3d& bary) {
  const FESpace& s = f.space;
  int nodes[6];
  s.element_nodes(element, nodes);
  double phi[6];
  if (s.degree == 1)
    p1_shape(bary, phi);
  else
    p2_shape(bary, phi);
  Eigen::Vector2d v = Eigen::Vector2d::Zero();
  for (int k = 0; k < s.nodes_per_element(); ++k)
    for (int c = 0; c < 2; ++c) v[c] += phi[k] * f.coeffs[s.dof(nodes[k], c)];
  return v;
}

Eigen::Matrix2d eval_vector_grad(const Field& f, int element, const Eigen::Vector3d& bary) {
  const FESpace& s = f.space;
  const TriGeom g = tri_geom(*s.mesh, element);
  int nodes[6];
  s.element_nodes(element, nodes);
  Eigen::Vector2d ref[6];
  if (s.degree == 1)
    p1_ref_grad(ref);
  else
    p2_ref_grad(bary, ref);
  Eigen::Matrix2d D = Eigen::Matrix2d::Zero();
  for (int k = 0; k < s.nodes_per_element(); ++k) {
    const Eigen::Vector2d gphi = g.invBT * ref[k];
    for (int c = 0; c < 2; ++c) D.row(c) += f.coeffs[s.dof(nodes[k], c)] * gphi.transpose();
  }
  return D;
}

}  // namespace mapshape
