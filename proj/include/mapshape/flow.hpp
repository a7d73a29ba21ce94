#pragma once

#include <functional>
#include <optional>

#include "mapshape/assembly.hpp"
#include "mapshape/spaces.hpp"

namespace mapshape {

// Inflow data on Gamma_in: axial velocity as a function of the distance r
// from the tunnel centerline. CosineCompatible is cos(pi r / delta), which
// vanishes at r = delta/2; PaperCosine is cos(2 pi r / delta).
struct InflowProfile {
  enum class Form { CosineCompatible, PaperCosine };
  Form form = Form::CosineCompatible;
  double delta = 6.0;

  double value(double r) const;
};

// P2 trace of g_in = (profile(|x2|), 0): a field on the P2 vector space whose
// Gamma_in dofs carry the inflow values and all other dofs are zero.
Field inflow_values(const TriMesh& mesh, const InflowProfile& profile);

struct StokesBC {
  std::vector<std::pair<BoundaryTag, std::function<Eigen::Vector2d(const Eigen::Vector2d&)>>>
      dirichlet;
  // Pins pressure dof 0 to zero; needed when every boundary part is Dirichlet.
  bool pin_pressure = false;
};

struct StokesSolution {
  Field v;  // P2 vector
  Field p;  // P1 scalar
};

// Transformed Stokes solve on the reference mesh: Taylor-Hood saddle point for
// tau = id + w. Throws if J <= 0 at a quadrature point or the factorization fails.
// `forcing` (optional) adds the volume term f . psi_v J on the right-hand side.
StokesSolution solve_stokes(
    const TriMesh& mesh, const Field& w, const StokesBC& bc, int qdegree = 5,
    const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>& forcing = nullptr);

// Production boundary conditions: v = g_in on Gamma_in, v = 0 on
// Gamma_ns and Gamma_d, do-nothing on Gamma_out.
StokesSolution solve_state(const TriMesh& mesh, const Field& w, const InflowProfile& profile,
                           int qdegree = 5);

// Energy dissipation in transformed form: 1/2 int (Dv A):(Dv A) J dx.
double dissipation(const TriMesh& mesh, const Field& w, const Field& v, int qdegree = 5);

// 1/2 int ((eta1 - J)_+)^2 dx.
double det_penalty(const TriMesh& mesh, const Field& w, double eta1, int qdegree = 5);

// int_Gamma_d c^2 ds.
double control_norm_sq(const TriMesh& mesh, const Field& c, int qdegree = 5);

// J(w, v, c) = dissipation + alpha/2 |c|^2 + gamma1 * det_penalty.
double objective(const TriMesh& mesh, const Field& w, const Field& v, const Field& c,
                 double alpha, double gamma1, double eta1, int qdegree = 5);

}  // namespace mapshape
