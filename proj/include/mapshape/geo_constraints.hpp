#pragma once

#include "mapshape/spaces.hpp"

namespace mapshape {

struct GeoResiduals {
  double volume_defect = 0.0;             // d * (vol(tau(Omega_d)) - vol(Omega_d))
  Eigen::Vector2d barycenter_defect = Eigen::Vector2d::Zero();  // unnormalized moments
};

// int_Gamma_d [ (x+w)^T (Dtau)^-T n J - x^T n ] ds with signed J.
double volume_residual(const TriMesh& mesh, const Field& w, int qdegree = 5);

// int_Gamma_d (x_i + w_i)^2 [(Dtau)^-T n]_i J ds, i = 1, 2.
Eigen::Vector2d barycenter_residual(const TriMesh& mesh, const Field& w, int qdegree = 5);

GeoResiduals geo_residuals(const TriMesh& mesh, const Field& w, int qdegree = 5);

// Area of the deformed design polygon by the shoelace formula (exact for P1 w).
double deformed_polygon_area(const TriMesh& mesh, const Field& w);

}  // namespace mapshape
