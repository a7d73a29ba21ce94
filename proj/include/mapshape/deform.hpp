#pragma once

#include "mapshape/assembly.hpp"
#include "mapshape/spaces.hpp"

namespace mapshape {

enum class StrategyTag { S1, S2, S3 };

// Extension of the obstacle-outward normal field into the volume, used by S1.
// SmoothQuadratic is (1/2 + |x|)^2 x; UnitRadial is x / |x|.
enum class NExtVariant { SmoothQuadratic, UnitRadial };

Eigen::Vector2d n_ext_value(NExtVariant variant, const Eigen::Vector2d& x);

struct Strategy {
  StrategyTag tag = StrategyTag::S3;
  NExtVariant n_ext = NExtVariant::SmoothQuadratic;
};

StrategyTag strategy_from_string(const std::string& name);
const char* to_string(StrategyTag tag);

// Closed-curve reaction-diffusion solve: b - Laplace_Gamma b = c in weak form
// on the design loop. SPD system, LDL^T.
Field solve_lb_scalar(const Field& c, int qdegree = 5);

// Componentwise vector variant with right-hand side c * n (per-edge normal).
Field solve_lb_vector(const Field& c, int qdegree = 5);

// Same solve with an arbitrary right-hand-side density; used by the c*n case
// and directly by tests.
Field solve_lb_vector_data(const TriMesh& mesh,
                           const std::function<Eigen::Vector2d(const CurveQCtx&)>& data,
                           int qdegree = 5);

// Harmonic extension: -Laplace z = 0, z = 0 on Gamma \ Gamma_d, Neumann trace
// datum b on Gamma_d (weak form rhs integral of b * psi over the design loop).
Field solve_extension_scalar(const Field& b, int qdegree = 5);

// Lame-type extension (mu = 1, lambda = 0) with zero Dirichlet data on
// Gamma \ Gamma_d. A vector-valued g enters as the boundary density g . psi;
// a scalar g enters as (g n) . psi with the per-edge normal (S2).
Field solve_extension_vector(const Field& g, int qdegree = 5);

// Control-to-deformation operator: maps a scalar control c on the design loop
// to a displacement field w on the volume P1 vector space.
//   S1: lb_scalar -> extension_scalar -> lumped L2 projection of z * n_ext
//   S2: lb_scalar -> extension_vector with datum b * n
//   S3: lb_vector -> extension_vector
Field apply_strategy(const Strategy& strategy, const Field& c, int qdegree = 5);

}  // namespace mapshape
