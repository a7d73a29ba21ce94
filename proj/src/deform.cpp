#include "mapshape/deform.hpp"

#include <Eigen/SparseCholesky>

namespace mapshape {

Eigen::Vector2d n_ext_value(NExtVariant variant, const Eigen::Vector2d& x) {
  const double r = x.norm();
  switch (variant) {
    case NExtVariant::SmoothQuadratic: {
      const double f = 0.5 + r;
      return f * f * x;
    }
    case NExtVariant::UnitRadial:
      if (r < 1e-14) throw std::runtime_error("n_ext x/|x| is singular at the origin");
      return x / r;
  }
  return x;
}

StrategyTag strategy_from_string(const std::string& name) {
  if (name == "S1") return StrategyTag::S1;
  if (name == "S2") return StrategyTag::S2;
  if (name == "S3") return StrategyTag::S3;
  throw std::invalid_argument("unknown strategy '" + name + "' (expected S1, S2 or S3)");
}

const char* to_string(StrategyTag tag) {
  switch (tag) {
    case StrategyTag::S1: return "S1";
    case StrategyTag::S2: return "S2";
    case StrategyTag::S3: return "S3";
  }
  return "?";
}

namespace {

Eigen::VectorXd spd_solve(const SparseMatrix& A, const Eigen::VectorXd& rhs) {
  Eigen::SimplicialLDLT<SparseMatrix> solver;
  solver.compute(A);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("LDLT factorization failed in curve solve");
  return solver.solve(rhs);
}

// b . psi + (db/ds) . (dpsi/ds), componentwise on the blocked basis.
double lb_kernel(const CurveQCtx&, const CurveShape& trial, const CurveShape& test) {
  if (trial.comp != test.comp) return 0.0;
  return trial.value * test.value + trial.darc * test.darc;
}

}  // namespace

Field solve_lb_scalar(const Field& c, int qdegree) {
  const FESpace& space = c.space;
  if (space.support != Support::Curve || space.value_dim != 1)
    throw std::invalid_argument("solve_lb_scalar expects a scalar curve field");
  const SparseMatrix A = assemble_curve_matrix(space, space, qdegree, lb_kernel);
  const Eigen::VectorXd rhs = assemble_curve_vector(space, qdegree,
      [&](const CurveQCtx& ctx, const CurveShape& test) {
        const double cv = (1.0 - ctx.s) * c.coeffs[ctx.loop_edge] +
                          ctx.s * c.coeffs[(ctx.loop_edge + 1) % space.n_scalar_nodes];
        return cv * test.value;
      });
  Field b(space);
  b.coeffs = spd_solve(A, rhs);
  return b;
}

Field solve_lb_vector_data(const TriMesh& mesh,
                           const std::function<Eigen::Vector2d(const CurveQCtx&)>& data,
                           int qdegree) {
  const FESpace space = make_curve_space(mesh, 2);

  const SparseMatrix A = assemble_curve_matrix(space, space, qdegree, lb_kernel);
  const Eigen::VectorXd rhs = assemble_curve_vector(space, qdegree,
      [&](const CurveQCtx& ctx, const CurveShape& test) {
        return data(ctx)[test.comp] * test.value;
      });
  Field b(space);
  b.coeffs = spd_solve(A, rhs);
  return b;
}

Field solve_lb_vector(const Field& c, int qdegree) {
  const FESpace& cs = c.space;
  if (cs.support != Support::Curve || cs.value_dim != 1)
    throw std::invalid_argument("solve_lb_vector expects a scalar curve control");
  const int m = cs.n_scalar_nodes;
  return solve_lb_vector_data(*cs.mesh,
      [&](const CurveQCtx& ctx) -> Eigen::Vector2d {
        const double cv =
            (1.0 - ctx.s) * c.coeffs[ctx.loop_edge] + ctx.s * c.coeffs[(ctx.loop_edge + 1) % m];
        return cv * ctx.normal;
      },
      qdegree);
}

Field solve_extension_scalar(const Field& b, int qdegree) {
  const FESpace& bs = b.space;
  if (bs.support != Support::Curve || bs.value_dim != 1)
    throw std::invalid_argument("solve_extension_scalar expects a scalar curve datum");
  const TriMesh& mesh = *bs.mesh;
  const FESpace space = make_volume_space(mesh, 1, 1);

  const SparseMatrix A = assemble_volume_matrix(space, space, qdegree,
      [](const VolumeQCtx&, const VolumeShape& trial, const VolumeShape& test) {
        return trial.grad.dot(test.grad);
      });
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(space.n_dofs);
  const int m = bs.n_scalar_nodes;
  rhs += assemble_curve_vector(space, qdegree, [&](const CurveQCtx& ctx, const CurveShape& test) {
    const double bv =
        (1.0 - ctx.s) * b.coeffs[ctx.loop_edge] + ctx.s * b.coeffs[(ctx.loop_edge + 1) % m];
    return bv * test.value;
  });
  const DirichletBC bc = make_dirichlet(
      space, {BoundaryTag::GammaIn, BoundaryTag::GammaOut, BoundaryTag::GammaNs});
  if (bc.n_fixed() == 0)
    throw std::runtime_error("extension problem needs a nonempty Dirichlet boundary");
  Field z(space);
  z.coeffs = solve_spd_constrained(A, rhs, bc);
  return z;
}

Field solve_extension_vector(const Field& g, int qdegree) {
  const FESpace& gs = g.space;
  if (gs.support != Support::Curve)
    throw std::invalid_argument("solve_extension_vector expects a curve datum");
  const TriMesh& mesh = *gs.mesh;
  const FESpace space = make_volume_space(mesh, 1, 2);

  // (Dw + Dw^T) : Dpsi, written against the blocked scalar bases.
  const SparseMatrix A = assemble_volume_matrix(space, space, qdegree,
      [](const VolumeQCtx&, const VolumeShape& trial, const VolumeShape& test) {
        double v = trial.grad[test.comp] * test.grad[trial.comp];
        if (trial.comp == test.comp) v += trial.grad.dot(test.grad);
        return v;
      });
  const int m = gs.n_scalar_nodes;
  const Eigen::VectorXd rhs = assemble_curve_vector(space, qdegree,
      [&](const CurveQCtx& ctx, const CurveShape& test) {
        Eigen::Vector2d gv;
        if (gs.value_dim == 2) {
          const int a = ctx.loop_edge, b2 = (ctx.loop_edge + 1) % m;
          gv[0] = (1.0 - ctx.s) * g.coeffs[gs.dof(a, 0)] + ctx.s * g.coeffs[gs.dof(b2, 0)];
          gv[1] = (1.0 - ctx.s) * g.coeffs[gs.dof(a, 1)] + ctx.s * g.coeffs[gs.dof(b2, 1)];
        } else {
          const double bv = (1.0 - ctx.s) * g.coeffs[ctx.loop_edge] +
                            ctx.s * g.coeffs[(ctx.loop_edge + 1) % m];
          gv = bv * ctx.normal;
        }
        return gv[test.comp] * test.value;
      });
  const DirichletBC bc = make_dirichlet(
      space, {BoundaryTag::GammaIn, BoundaryTag::GammaOut, BoundaryTag::GammaNs});
  if (bc.n_fixed() == 0)
    throw std::runtime_error("extension problem needs a nonempty Dirichlet boundary");
  Field w(space);
  w.coeffs = solve_spd_constrained(A, rhs, bc);
  return w;
}

Field apply_strategy(const Strategy& strategy, const Field& c, int qdegree) {
  switch (strategy.tag) {
    case StrategyTag::S2:
      return solve_extension_vector(solve_lb_scalar(c, qdegree), qdegree);
    case StrategyTag::S3:
      return solve_extension_vector(solve_lb_vector(c, qdegree), qdegree);
    case StrategyTag::S1:
      break;
  }

  const Field b = solve_lb_scalar(c, qdegree);
  const Field z = solve_extension_scalar(b, qdegree);
  const TriMesh& mesh = *c.space.mesh;
  const FESpace space = make_volume_space(mesh, 1, 2);

  // Lumped L2 projection of z * n_ext onto the P1 vector space.
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(space.n_dofs);
  Eigen::VectorXd lumped = Eigen::VectorXd::Zero(space.n_dofs);
  const auto& rule = triangle_rule(qdegree);
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const TriGeom g = tri_geom(mesh, e);
    int nodes[3];
    space.element_nodes(e, nodes);
    for (const auto& qp : rule) {
      const double wq = qp.weight * std::abs(g.detB);
      double phi[3];
      p1_shape(qp.bary, phi);
      const Eigen::Vector2d x = g.p0 + g.B * Eigen::Vector2d(qp.bary[1], qp.bary[2]);
      double zv = 0.0;
      for (int k = 0; k < 3; ++k) zv += phi[k] * z.coeffs[nodes[k]];
      const Eigen::Vector2d ne = n_ext_value(strategy.n_ext, x);
      for (int k = 0; k < 3; ++k)
        for (int comp = 0; comp < 2; ++comp) {
          rhs[space.dof(nodes[k], comp)] += wq * zv * ne[comp] * phi[k];
          lumped[space.dof(nodes[k], comp)] += wq * phi[k];
        }
    }
  }
  Field w(space);
  w.coeffs = rhs.cwiseQuotient(lumped);
  return w;
}

}  // namespace mapshape
