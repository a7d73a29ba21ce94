#pragma once

#include <Eigen/Dense>

#include "mapshape/spaces.hpp"

namespace mapshape {

// Deformation gradient data of tau = id + w at a point: Dtau = I + Dw and
// J = det(Dtau) (signed). The inverse uses the explicit 2x2 formula and
// throws when |J| < 1e-14.
struct Transform {
  Eigen::Matrix2d Dtau = Eigen::Matrix2d::Identity();
  double J = 1.0;

  Eigen::Matrix2d inverse() const;
};

Transform transform_from_grad(const Eigen::Matrix2d& Dw);

// Evaluates the transform of a volume vector field w inside a triangle.
Transform eval_transform(const Field& w, int element, const Eigen::Vector3d& bary);

// Unit normal of the deformed design boundary at parameter s of a design-loop
// edge: (Dtau)^-T n normalized, with n the reference edge normal.
Eigen::Vector2d transformed_normal(const TriMesh& mesh, const Field& w, int loop_edge, double s);

}  // namespace mapshape
