#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "mapshape/mesh.hpp"

namespace mapshape {

enum class Support { Volume, Curve };

// Discrete Lagrange space on the mesh volume (P1 or P2) or on the design
// curve (P1). Vector-valued spaces are component-blocked: dof(node, comp)
// = comp * n_scalar_nodes + node.
struct FESpace {
  const TriMesh* mesh = nullptr;
  int degree = 1;
  int value_dim = 1;
  Support support = Support::Volume;
  int n_scalar_nodes = 0;
  int n_dofs = 0;

  int dof(int node, int comp) const { return comp * n_scalar_nodes + node; }
  int nodes_per_element() const { return support == Support::Volume ? 3 * degree : 2; }
  int n_elements() const {
    return support == Support::Volume ? mesh->n_triangles() : mesh->n_design_edges();
  }

  // Scalar node ids of element e (triangle or design-loop edge). For volume P2
  // the first three are vertices, the last three edge nodes (nv + edge id),
  // edge k opposite vertex k. For the curve, nodes are loop positions.
  void element_nodes(int e, int* out) const;

  // Coordinates of a scalar node.
  Eigen::Vector2d node_position(int node) const;
};

FESpace make_volume_space(const TriMesh& mesh, int degree, int value_dim);
FESpace make_curve_space(const TriMesh& mesh, int value_dim);

bool same_space(const FESpace& a, const FESpace& b);

// Coefficient vector bound to a space. FESpace is a small value type; the
// mesh it points to must outlive the field.
struct Field {
  FESpace space;
  Eigen::VectorXd coeffs;

  Field() = default;
  explicit Field(const FESpace& s) : space(s), coeffs(Eigen::VectorXd::Zero(s.n_dofs)) {}

  void check_finite() const;
};

// Nodal interpolation of a scalar or vector function.
Field interpolate(const FESpace& space,
                  const std::function<double(const Eigen::Vector2d&)>& f);
Field interpolate(const FESpace& space,
                  const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>& f);

// --- Reference bases -------------------------------------------------------

// P1 and P2 shape values / reference gradients at a barycentric point.
// Reference triangle (0,0)-(1,0)-(0,1) with l0 = 1-x-y, l1 = x, l2 = y.
void p1_shape(const Eigen::Vector3d& b, double value[3]);
void p2_shape(const Eigen::Vector3d& b, double value[6]);
void p1_ref_grad(Eigen::Vector2d grad[3]);
void p2_ref_grad(const Eigen::Vector3d& b, Eigen::Vector2d grad[6]);

// Affine geometry of a triangle: x = p0 + B * (ref point); physical gradient
// = invBT * reference gradient; |det B| = 2 * area.
struct TriGeom {
  Eigen::Vector2d p0;
  Eigen::Matrix2d B;
  Eigen::Matrix2d invBT;
  double detB = 0.0;
};
TriGeom tri_geom(const TriMesh& mesh, int t);

// Barycentric coordinates of the curve point at parameter s on design edge i
// within its adjacent triangle; also returns the triangle index.
Eigen::Vector3d curve_point_barycentric(const TriMesh& mesh, int loop_edge, double s, int& tri);

// --- Field evaluation (tests and output) ------------------------------------

double eval_scalar(const Field& f, int element, const Eigen::Vector3d& bary);
Eigen::Vector2d eval_vector(const Field& f, int element, const Eigen::Vector3d& bary);
// Gradient of a vector field at a point of a triangle (rows: component, cols: d/dx).
Eigen::Matrix2d eval_vector_grad(const Field& f, int element, const Eigen::Vector3d& bary);

}  // namespace mapshape
