#include "mapshape/assembly.hpp"

#include <map>

#include <Eigen/SparseCholesky>

namespace mapshape {

namespace {

// Shapes of all element dofs of `space` at a volume quadrature point.
struct VolumeShapeTable {
  int n = 0;
  int dofs[12];
  VolumeShape shapes[12];
};

void volume_shapes(const FESpace& s, int element, const TriGeom& g, const Eigen::Vector3d& bary,
                   VolumeShapeTable& out) {
  int nodes[6];
  s.element_nodes(element, nodes);
  const int npe = s.nodes_per_element();
  double value[6];
  Eigen::Vector2d ref[6];
  if (s.degree == 1) {
    p1_shape(bary, value);
    p1_ref_grad(ref);
  } else {
    p2_shape(bary, value);
    p2_ref_grad(bary, ref);
  }
  out.n = 0;
  for (int c = 0; c < s.value_dim; ++c)
    for (int k = 0; k < npe; ++k) {
      out.dofs[out.n] = s.dof(nodes[k], c);
      out.shapes[out.n] = {c, value[k], g.invBT * ref[k]};
      ++out.n;
    }
}

struct CurveShapeTable {
  int n = 0;
  int dofs[12];
  CurveShape shapes[12];
};

void curve_shapes(const FESpace& s, const TriMesh& mesh, int loop_edge, double sp,
                  CurveShapeTable& out) {
  out.n = 0;
  if (s.support == Support::Curve) {
    const double len = mesh.design_edge_length(loop_edge);
    int nodes[2];
    s.element_nodes(loop_edge, nodes);
    const double value[2] = {1.0 - sp, sp};
    const double darc[2] = {-1.0 / len, 1.0 / len};
    for (int c = 0; c < s.value_dim; ++c)
      for (int k = 0; k < 2; ++k) {
        out.dofs[out.n] = s.dof(nodes[k], c);
        out.shapes[out.n] = {c, value[k], darc[k], Eigen::Vector2d::Zero()};
        ++out.n;
      }
  } else {
    int tri = -1;
    const Eigen::Vector3d bary = curve_point_barycentric(mesh, loop_edge, sp, tri);
    const TriGeom g = tri_geom(mesh, tri);
    int nodes[6];
    s.element_nodes(tri, nodes);
    double value[6];
    Eigen::Vector2d ref[6];
    if (s.degree == 1) {
      p1_shape(bary, value);
      p1_ref_grad(ref);
    } else {
      p2_shape(bary, value);
      p2_ref_grad(bary, ref);
    }
    for (int c = 0; c < s.value_dim; ++c)
      for (int k = 0; k < s.nodes_per_element(); ++k) {
        out.dofs[out.n] = s.dof(nodes[k], c);
        out.shapes[out.n] = {c, value[k], 0.0, g.invBT * ref[k]};
        ++out.n;
      }
  }
}

}  // namespace

SparseMatrix assemble_volume_matrix(const FESpace& trial, const FESpace& test, int qdegree,
                                    const VolumeBilinearKernel& kernel) {
  if (trial.mesh != test.mesh || trial.support != Support::Volume ||
      test.support != Support::Volume)
    throw std::invalid_argument("assemble_volume_matrix: incompatible spaces");
  const TriMesh& mesh = *trial.mesh;
  const auto& rule = triangle_rule(qdegree);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<size_t>(mesh.n_triangles()) * 36);
  VolumeShapeTable tr, te;
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const TriGeom g = tri_geom(mesh, e);
    for (const auto& qp : rule) {
      const VolumeQCtx ctx{e, g.p0 + g.B * Eigen::Vector2d(qp.bary[1], qp.bary[2]),
                           qp.weight * std::abs(g.detB)};
      volume_shapes(trial, e, g, qp.bary, tr);
      volume_shapes(test, e, g, qp.bary, te);
      for (int i = 0; i < te.n; ++i)
        for (int j = 0; j < tr.n; ++j) {
          const double v = kernel(ctx, tr.shapes[j], te.shapes[i]) * ctx.weight;
          if (v != 0.0) trips.emplace_back(te.dofs[i], tr.dofs[j], v);
        }
    }
  }
  SparseMatrix A(test.n_dofs, trial.n_dofs);
  A.setFromTriplets(trips.begin(), trips.end());
  return A;
}

Eigen::VectorXd assemble_volume_vector(const FESpace& test, int qdegree,
                                       const VolumeLinearKernel& kernel) {
  const TriMesh& mesh = *test.mesh;
  const auto& rule = triangle_rule(qdegree);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(test.n_dofs);
  VolumeShapeTable te;
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const TriGeom g = tri_geom(mesh, e);
    for (const auto& qp : rule) {
      const VolumeQCtx ctx{e, g.p0 + g.B * Eigen::Vector2d(qp.bary[1], qp.bary[2]),
                           qp.weight * std::abs(g.detB)};
      volume_shapes(test, e, g, qp.bary, te);
      for (int i = 0; i < te.n; ++i) v[te.dofs[i]] += kernel(ctx, te.shapes[i]) * ctx.weight;
    }
  }
  return v;
}

namespace {

CurveQCtx curve_ctx(const TriMesh& mesh, int loop_edge, double sp, double w) {
  const auto [a, b] = mesh.design_edge_vertices(loop_edge);
  CurveQCtx ctx;
  ctx.loop_edge = loop_edge;
  ctx.x = (1.0 - sp) * mesh.vertices[a] + sp * mesh.vertices[b];
  ctx.weight = w * mesh.design_edge_length(loop_edge);
  ctx.tangent = mesh.design_edge_tangent(loop_edge);
  ctx.normal = mesh.design_edge_normal(loop_edge);
  ctx.s = sp;
  ctx.tri = mesh.boundary_edges[mesh.design_edge_index[loop_edge]].tri;
  return ctx;
}

}  // namespace

SparseMatrix assemble_curve_matrix(const FESpace& trial, const FESpace& test, int qdegree,
                                   const CurveBilinearKernel& kernel) {
  if (trial.mesh != test.mesh) throw std::invalid_argument("assemble_curve_matrix: mesh mismatch");
  const TriMesh& mesh = *trial.mesh;
  const auto& rule = segment_rule(qdegree);
  std::vector<Eigen::Triplet<double>> trips;
  CurveShapeTable tr, te;
  for (int e = 0; e < mesh.n_design_edges(); ++e) {
    for (const auto& qp : rule) {
      const CurveQCtx ctx = curve_ctx(mesh, e, qp.s, qp.weight);
      curve_shapes(trial, mesh, e, qp.s, tr);
      curve_shapes(test, mesh, e, qp.s, te);
      for (int i = 0; i < te.n; ++i)
        for (int j = 0; j < tr.n; ++j) {
          const double v = kernel(ctx, tr.shapes[j], te.shapes[i]) * ctx.weight;
          if (v != 0.0) trips.emplace_back(te.dofs[i], tr.dofs[j], v);
        }
    }
  }
  SparseMatrix A(test.n_dofs, trial.n_dofs);
  A.setFromTriplets(trips.begin(), trips.end());
  return A;
}

Eigen::VectorXd assemble_curve_vector(const FESpace& test, int qdegree,
                                      const CurveLinearKernel& kernel) {
  const TriMesh& mesh = *test.mesh;
  const auto& rule = segment_rule(qdegree);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(test.n_dofs);
  CurveShapeTable te;
  for (int e = 0; e < mesh.n_design_edges(); ++e) {
    for (const auto& qp : rule) {
      const CurveQCtx ctx = curve_ctx(mesh, e, qp.s, qp.weight);
      curve_shapes(test, mesh, e, qp.s, te);
      for (int i = 0; i < te.n; ++i) v[te.dofs[i]] += kernel(ctx, te.shapes[i]) * ctx.weight;
    }
  }
  return v;
}

int DirichletBC::n_fixed() const {
  int n = 0;
  for (char f : fixed) n += (f != 0);
  return n;
}

DirichletBC make_dirichlet(const FESpace& space, const std::vector<BoundaryTag>& tags) {
  if (space.support != Support::Volume)
    throw std::invalid_argument("Dirichlet constraints only apply to volume spaces");
  DirichletBC bc(space);
  const TriMesh& mesh = *space.mesh;
  std::map<std::array<int, 2>, int> edge_id;
  if (space.degree == 2)
    for (int e = 0; e < mesh.n_edges(); ++e) edge_id[mesh.edges[e]] = e;

  for (const auto& be : mesh.boundary_edges) {
    bool match = false;
    for (auto t : tags) match = match || (t == be.tag);
    if (!match) continue;
    std::vector<int> nodes = {be.v0, be.v1};
    if (space.degree == 2) {
      const std::array<int, 2> key = {std::min(be.v0, be.v1), std::max(be.v0, be.v1)};
      nodes.push_back(mesh.n_vertices() + edge_id.at(key));
    }
    for (int n : nodes)
      for (int c = 0; c < space.value_dim; ++c) bc.fixed[space.dof(n, c)] = 1;
  }
  return bc;
}

void set_dirichlet_values(DirichletBC& bc, const FESpace& space, BoundaryTag tag,
                          const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>& f) {
  const TriMesh& mesh = *space.mesh;
  std::map<std::array<int, 2>, int> edge_id;
  if (space.degree == 2)
    for (int e = 0; e < mesh.n_edges(); ++e) edge_id[mesh.edges[e]] = e;
  for (const auto& be : mesh.boundary_edges) {
    if (be.tag != tag) continue;
    std::vector<int> nodes = {be.v0, be.v1};
    if (space.degree == 2) {
      const std::array<int, 2> key = {std::min(be.v0, be.v1), std::max(be.v0, be.v1)};
      nodes.push_back(mesh.n_vertices() + edge_id.at(key));
    }
    for (int n : nodes) {
      const Eigen::Vector2d v = f(space.node_position(n));
      for (int c = 0; c < space.value_dim; ++c) {
        bc.fixed[space.dof(n, c)] = 1;
        bc.values[space.dof(n, c)] = v[c];
      }
    }
  }
}

Eigen::VectorXd solve_spd_constrained(const SparseMatrix& A, const Eigen::VectorXd& rhs,
                                      const DirichletBC& bc) {
  const int n = static_cast<int>(A.rows());
  std::vector<int> free_index(n, -1);
  int n_free = 0;
  for (int i = 0; i < n; ++i)
    if (!bc.fixed[i]) free_index[i] = n_free++;

  std::vector<Eigen::Triplet<double>> trips;
  Eigen::VectorXd r(n_free);
  for (int i = 0; i < n; ++i)
    if (free_index[i] >= 0) r[free_index[i]] = rhs[i];
  for (int k = 0; k < A.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(A, k); it; ++it) {
      const int i = static_cast<int>(it.row());
      const int j = static_cast<int>(it.col());
      if (free_index[i] < 0) continue;
      if (free_index[j] >= 0)
        trips.emplace_back(free_index[i], free_index[j], it.value());
      else if (bc.values[j] != 0.0)
        r[free_index[i]] -= it.value() * bc.values[j];
    }
  SparseMatrix Ared(n_free, n_free);
  Ared.setFromTriplets(trips.begin(), trips.end());

  Eigen::SimplicialLDLT<SparseMatrix> solver;
  solver.compute(Ared);
  if (solver.info() != Eigen::Success) throw std::runtime_error("LDLT factorization failed");
  const Eigen::VectorXd u = solver.solve(r);

  Eigen::VectorXd full = bc.values;
  for (int i = 0; i < n; ++i)
    if (free_index[i] >= 0) full[i] = u[free_index[i]];
  return full;
}

}  // namespace mapshape
