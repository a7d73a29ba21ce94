#include "mapshape/flow.hpp"

#include <cmath>

#include <Eigen/SparseLU>

#include "mapshape/quadrature.hpp"
#include "mapshape/transform.hpp"

namespace mapshape {

double InflowProfile::value(double r) const {
  switch (form) {
    case Form::CosineCompatible: return std::cos(M_PI * r / delta);
    case Form::PaperCosine: return std::cos(2.0 * M_PI * r / delta);
  }
  return 0.0;
}

Field inflow_values(const TriMesh& mesh, const InflowProfile& profile) {
  const FESpace space = make_volume_space(mesh, 2, 2);
  Field g(space);
  DirichletBC bc(space);
  set_dirichlet_values(bc, space, BoundaryTag::GammaIn,
                       [&](const Eigen::Vector2d& x) -> Eigen::Vector2d {
                         return {profile.value(std::abs(x.y())), 0.0};
                       });
  g.coeffs = bc.values;
  return g;
}

StokesSolution solve_stokes(
    const TriMesh& mesh, const Field& w, const StokesBC& bc, int qdegree,
    const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>& forcing) {
  const FESpace Sv = make_volume_space(mesh, 2, 2);
  const FESpace Sp = make_volume_space(mesh, 1, 1);
  const int nv = Sv.n_dofs;
  const int np = Sp.n_dofs;
  const int n = nv + np;

  // Dirichlet data for the velocity.
  DirichletBC vbc(Sv);
  for (const auto& [tag, fn] : bc.dirichlet) set_dirichlet_values(vbc, Sv, tag, fn);

  std::vector<char> fixed(n, 0);
  Eigen::VectorXd fixed_values = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < nv; ++i) {
    fixed[i] = vbc.fixed[i];
    fixed_values[i] = vbc.values[i];
  }
  if (bc.pin_pressure) fixed[nv] = 1;

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<size_t>(mesh.n_triangles()) * 260);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);

  const auto& rule = triangle_rule(qdegree);
  int vnodes[6], pnodes[3];
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const TriGeom g = tri_geom(mesh, e);
    Sv.element_nodes(e, vnodes);
    Sp.element_nodes(e, pnodes);
    for (const auto& qp : rule) {
      const Transform t = eval_transform(w, e, qp.bary);
      if (t.J <= 0.0)
        throw std::runtime_error("solve_stokes: non-positive J at a quadrature point");
      const Eigen::Matrix2d A = t.inverse();
      const double wq = qp.weight * std::abs(g.detB);

      double phi2[6], phi1[3];
      Eigen::Vector2d ref2[6];
      p2_shape(qp.bary, phi2);
      p2_ref_grad(qp.bary, ref2);
      p1_shape(qp.bary, phi1);

      // For basis (node k, comp c): D = e_c (grad phi_k)^T, so D*A has row c
      // equal to A^T grad phi_k; trace(D*A) = (A^T grad phi_k)[c].
      Eigen::Vector2d gA[6];
      for (int k = 0; k < 6; ++k) gA[k] = A.transpose() * (g.invBT * ref2[k]);

      for (int ci = 0; ci < 2; ++ci)
        for (int ki = 0; ki < 6; ++ki) {
          const int gi = Sv.dof(vnodes[ki], ci);
          // velocity-velocity block: (Dv A):(Dpsi A)
          for (int cj = 0; cj < 2; ++cj)
            for (int kj = 0; kj < 6; ++kj) {
              if (ci != cj) continue;  // rows of D are component-disjoint
              const double val = gA[kj].dot(gA[ki]) * t.J * wq;
              trips.emplace_back(gi, Sv.dof(vnodes[kj], cj), val);
            }
          // pressure coupling: -p Tr(Dpsi A) and +psi_p Tr(Dv A)
          const double trDiA = gA[ki][ci];
          for (int kp = 0; kp < 3; ++kp) {
            const double val = phi1[kp] * trDiA * t.J * wq;
            trips.emplace_back(gi, nv + pnodes[kp], -val);
            trips.emplace_back(nv + pnodes[kp], gi, val);
          }
          if (forcing) {
            const Eigen::Vector2d x = g.p0 + g.B * Eigen::Vector2d(qp.bary[1], qp.bary[2]);
            rhs[gi] += forcing(x)[ci] * phi2[ki] * t.J * wq;
          }
        }
    }
  }

  // Reduce out fixed dofs symmetrically.
  std::vector<int> free_index(n, -1);
  int n_free = 0;
  for (int i = 0; i < n; ++i)
    if (!fixed[i]) free_index[i] = n_free++;
  std::vector<Eigen::Triplet<double>> red;
  red.reserve(trips.size());
  Eigen::VectorXd r(n_free);
  for (int i = 0; i < n; ++i)
    if (free_index[i] >= 0) r[free_index[i]] = rhs[i];
  // Accumulate boundary contributions in deterministic triplet order.
  for (const auto& tr : trips) {
    const int i = tr.row(), j = tr.col();
    if (free_index[i] < 0) continue;
    if (free_index[j] >= 0)
      red.emplace_back(free_index[i], free_index[j], tr.value());
    else if (fixed_values[j] != 0.0)
      r[free_index[i]] -= tr.value() * fixed_values[j];
  }
  SparseMatrix K(n_free, n_free);
  K.setFromTriplets(red.begin(), red.end());

  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> solver;
  solver.analyzePattern(K);
  solver.factorize(K);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("solve_stokes: sparse LU factorization failed");
  const Eigen::VectorXd u = solver.solve(r);

  StokesSolution sol{Field(Sv), Field(Sp)};
  for (int i = 0; i < nv; ++i)
    sol.v.coeffs[i] = (free_index[i] >= 0) ? u[free_index[i]] : fixed_values[i];
  for (int i = 0; i < np; ++i)
    sol.p.coeffs[i] = (free_index[nv + i] >= 0) ? u[free_index[nv + i]] : 0.0;
  return sol;
}

StokesSolution solve_state(const TriMesh& mesh, const Field& w, const InflowProfile& profile,
                           int qdegree) {
  StokesBC bc;
  bc.dirichlet.push_back({BoundaryTag::GammaIn,
                          [profile](const Eigen::Vector2d& x) -> Eigen::Vector2d {
                            return {profile.value(std::abs(x.y())), 0.0};
                          }});
  const auto zero = [](const Eigen::Vector2d&) -> Eigen::Vector2d { return {0.0, 0.0}; };
  bc.dirichlet.push_back({BoundaryTag::GammaNs, zero});
  bc.dirichlet.push_back({BoundaryTag::GammaD, zero});
  return solve_stokes(mesh, w, bc, qdegree);
}

double dissipation(const TriMesh& mesh, const Field& w, const Field& v, int qdegree) {
  const auto& rule = triangle_rule(qdegree);
  double sum = 0.0;
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const TriGeom g = tri_geom(mesh, e);
    for (const auto& qp : rule) {
      const Transform t = eval_transform(w, e, qp.bary);
      const Eigen::Matrix2d A = t.inverse();
      const Eigen::Matrix2d V = eval_vector_grad(v, e, qp.bary) * A;
      sum += 0.5 * V.squaredNorm() * t.J * qp.weight * std::abs(g.detB);
    }
  }
  return sum;
}

double det_penalty(const TriMesh& mesh, const Field& w, double eta1, int qdegree) {
  const auto& rule = triangle_rule(qdegree);
  double sum = 0.0;
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const TriGeom g = tri_geom(mesh, e);
    for (const auto& qp : rule) {
      const Transform t = eval_transform(w, e, qp.bary);
      const double pos = std::max(0.0, eta1 - t.J);
      sum += 0.5 * pos * pos * qp.weight * std::abs(g.detB);
    }
  }
  return sum;
}

double control_norm_sq(const TriMesh& mesh, const Field& c, int qdegree) {
  const auto& rule = segment_rule(qdegree);
  const int m = mesh.n_design_edges();
  double sum = 0.0;
  for (int e = 0; e < m; ++e) {
    const double len = mesh.design_edge_length(e);
    for (const auto& qp : rule) {
      const double cv = (1.0 - qp.s) * c.coeffs[e] + qp.s * c.coeffs[(e + 1) % m];
      sum += cv * cv * qp.weight * len;
    }
  }
  return sum;
}

double objective(const TriMesh& mesh, const Field& w, const Field& v, const Field& c,
                 double alpha, double gamma1, double eta1, int qdegree) {
  return dissipation(mesh, w, v, qdegree) + 0.5 * alpha * control_norm_sq(mesh, c, qdegree) +
         gamma1 * det_penalty(mesh, w, eta1, qdegree);
}

}  // namespace mapshape
