#pragma once

#include <functional>
#include <vector>

#include <Eigen/Sparse>

#include "mapshape/quadrature.hpp"
#include "mapshape/spaces.hpp"

namespace mapshape {

using SparseMatrix = Eigen::SparseMatrix<double>;

// Quadrature-point context on a triangle; weight is the physical weight.
struct VolumeQCtx {
  int element;
  Eigen::Vector2d x;
  double weight;
};

// One scalar shape function of a (possibly component-blocked) space.
struct VolumeShape {
  int comp;
  double value;
  Eigen::Vector2d grad;
};

// Quadrature-point context on a design-loop edge; weight carries the arc measure.
struct CurveQCtx {
  int loop_edge;
  Eigen::Vector2d x;
  double weight;
  Eigen::Vector2d tangent;  // unit, loop orientation
  Eigen::Vector2d normal;   // unit, obstacle-outward
  double s;                 // edge parameter in [0, 1]
  int tri;                  // adjacent triangle
};

// Shape function seen from a curve point. For curve-supported spaces `darc`
// is the arclength derivative; for volume-supported spaces `grad` is the
// physical gradient of the trace.
struct CurveShape {
  int comp;
  double value;
  double darc;
  Eigen::Vector2d grad;
};

using VolumeBilinearKernel =
    std::function<double(const VolumeQCtx&, const VolumeShape& trial, const VolumeShape& test)>;
using VolumeLinearKernel = std::function<double(const VolumeQCtx&, const VolumeShape& test)>;
using CurveBilinearKernel =
    std::function<double(const CurveQCtx&, const CurveShape& trial, const CurveShape& test)>;
using CurveLinearKernel = std::function<double(const CurveQCtx&, const CurveShape& test)>;

// Deterministic global assembly; contributions are accumulated in element order.
SparseMatrix assemble_volume_matrix(const FESpace& trial, const FESpace& test, int qdegree,
                                    const VolumeBilinearKernel& kernel);
Eigen::VectorXd assemble_volume_vector(const FESpace& test, int qdegree,
                                       const VolumeLinearKernel& kernel);
SparseMatrix assemble_curve_matrix(const FESpace& trial, const FESpace& test, int qdegree,
                                   const CurveBilinearKernel& kernel);
Eigen::VectorXd assemble_curve_vector(const FESpace& test, int qdegree,
                                      const CurveLinearKernel& kernel);

// Dirichlet constraints on a space: per-dof flag and prescribed value.
struct DirichletBC {
  std::vector<char> fixed;
  Eigen::VectorXd values;

  explicit DirichletBC(const FESpace& s)
      : fixed(s.n_dofs, 0), values(Eigen::VectorXd::Zero(s.n_dofs)) {}
  int n_fixed() const;
};

// Marks all dofs (all components) on boundary edges with the given tags as
// homogeneous Dirichlet. For P2 spaces this covers vertex and edge nodes.
DirichletBC make_dirichlet(const FESpace& space, const std::vector<BoundaryTag>& tags);

// Overwrites prescribed values on one tag with a vector-valued function.
void set_dirichlet_values(DirichletBC& bc, const FESpace& space, BoundaryTag tag,
                          const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>& f);

// Solves A u = rhs with symmetric elimination of the constrained dofs
// (SPD reduced system, LDL^T). Returns the full vector including fixed values.
Eigen::VectorXd solve_spd_constrained(const SparseMatrix& A, const Eigen::VectorXd& rhs,
                                      const DirichletBC& bc);

}  // namespace mapshape
