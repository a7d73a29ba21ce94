#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mapshape {

// Boundary parts of the flow-tunnel geometry. GammaD is the closed design
// curve around the obstacle; the other three make up the outer boundary.
enum class BoundaryTag { GammaIn, GammaOut, GammaNs, GammaD };

const char* to_string(BoundaryTag tag);

struct BoundaryEdge {
  int v0 = -1;
  int v1 = -1;
  BoundaryTag tag = BoundaryTag::GammaNs;
  int tri = -1;         // the unique triangle containing this edge
  int local_edge = -1;  // local edge index in that triangle (0: v1v2, 1: v2v0, 2: v0v1)
};

// Immutable 2D triangulation with tagged boundary and a closed design loop.
// Triangles are counterclockwise; the design loop is ordered counterclockwise
// around the obstacle so its edge normals (rotate tangent by -90 degrees)
// point from the obstacle into the fluid.
struct TriMesh {
  std::vector<Eigen::Vector2d> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;

  // Ordered design-loop vertex ids; edge i connects loop vertex i and i+1 (mod size).
  std::vector<int> design_loop;

  // Unique mesh edges as (lo, hi) vertex pairs, and per-triangle edge ids
  // (edge k of a triangle is opposite local vertex k). Used for P2 dofs.
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> tri_edges;

  // design_loop position -> boundary_edges index of the edge starting there; -1 sized like design_loop.
  std::vector<int> design_edge_index;
  // mesh vertex id -> design_loop position, or -1.
  std::vector<int> loop_position;

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_triangles() const { return static_cast<int>(triangles.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
  int n_design_edges() const { return static_cast<int>(design_loop.size()); }

  double triangle_area(int t) const;
  // Length and unit tangent/normal of design-loop edge i (normal points obstacle-outward).
  double design_edge_length(int i) const;
  Eigen::Vector2d design_edge_tangent(int i) const;
  Eigen::Vector2d design_edge_normal(int i) const;
  // Endpoints of design-loop edge i as vertex ids.
  std::array<int, 2> design_edge_vertices(int i) const;

  // True if vertex v lies on any boundary edge with the given tag.
  bool vertex_on_tag(int v, BoundaryTag tag) const;

  // Builds derived connectivity and checks all invariants; throws std::runtime_error
  // with a descriptive message on violation. Called by the loaders.
  void finalize();
};

// Obstacle-outward unit normals at the design-loop vertices: length-weighted
// average of the two adjacent edge normals, renormalized. Indexed by loop position.
std::vector<Eigen::Vector2d> design_normals(const TriMesh& mesh);

// Signed polygon area of the design loop (positive; the loop is CCW).
double design_polygon_area(const TriMesh& mesh);

struct QualityReport {
  double min_jacobian = 0.0;
  double min_angle = 0.0;        // radians, over deformed triangles
  double max_aspect_ratio = 0.0; // longest edge / shortest altitude, deformed
  int n_inverted = 0;
};

}  // namespace mapshape
