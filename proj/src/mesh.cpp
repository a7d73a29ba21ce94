#include "mapshape/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace mapshape {

const char* to_string(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::GammaIn: return "Gamma_in";
    case BoundaryTag::GammaOut: return "Gamma_out";
    case BoundaryTag::GammaNs: return "Gamma_ns";
    case BoundaryTag::GammaD: return "Gamma_d";
  }
  return "?";
}

double TriMesh::triangle_area(int t) const {
  const auto& tri = triangles[t];
  const Eigen::Vector2d a = vertices[tri[0]];
  const Eigen::Vector2d b = vertices[tri[1]];
  const Eigen::Vector2d c = vertices[tri[2]];
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

std::array<int, 2> TriMesh::design_edge_vertices(int i) const {
  const int m = n_design_edges();
  return {design_loop[i], design_loop[(i + 1) % m]};
}

double TriMesh::design_edge_length(int i) const {
  const auto [a, b] = design_edge_vertices(i);
  return (vertices[b] - vertices[a]).norm();
}

Eigen::Vector2d TriMesh::design_edge_tangent(int i) const {
  const auto [a, b] = design_edge_vertices(i);
  return (vertices[b] - vertices[a]).normalized();
}

Eigen::Vector2d TriMesh::design_edge_normal(int i) const {
  // Rotate the CCW tangent by -90 degrees: points away from the enclosed obstacle.
  const Eigen::Vector2d t = design_edge_tangent(i);
  return {t.y(), -t.x()};
}

bool TriMesh::vertex_on_tag(int v, BoundaryTag tag) const {
  for (const auto& be : boundary_edges)
    if (be.tag == tag && (be.v0 == v || be.v1 == v)) return true;
  return false;
}

namespace {

std::array<int, 2> sorted_pair(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

void TriMesh::finalize() {
  const int nv = n_vertices();
  for (const auto& tri : triangles)
    for (int v : tri)
      if (v < 0 || v >= nv) throw std::runtime_error("triangle references invalid vertex");

  // Orientation: every triangle CCW with strictly positive area.
  for (int t = 0; t < n_triangles(); ++t) {
    if (triangle_area(t) <= 0.0)
      throw std::runtime_error("triangle " + std::to_string(t) + " has non-positive area");
  }

  // Unique edge numbering and per-triangle edge ids (edge k opposite vertex k).
  std::map<std::array<int, 2>, int> edge_id;
  edges.clear();
  tri_edges.assign(triangles.size(), {-1, -1, -1});
  for (int t = 0; t < n_triangles(); ++t) {
    const auto& tri = triangles[t];
    for (int k = 0; k < 3; ++k) {
      const auto key = sorted_pair(tri[(k + 1) % 3], tri[(k + 2) % 3]);
      auto it = edge_id.find(key);
      if (it == edge_id.end()) {
        it = edge_id.emplace(key, static_cast<int>(edges.size())).first;
        edges.push_back(key);
      }
      tri_edges[t][k] = it->second;
    }
  }

  // Attach each boundary edge to its unique triangle.
  std::map<std::array<int, 2>, std::vector<std::pair<int, int>>> edge_tris;
  for (int t = 0; t < n_triangles(); ++t) {
    const auto& tri = triangles[t];
    for (int k = 0; k < 3; ++k)
      edge_tris[sorted_pair(tri[(k + 1) % 3], tri[(k + 2) % 3])].push_back({t, k});
  }
  for (auto& be : boundary_edges) {
    const auto key = sorted_pair(be.v0, be.v1);
    auto it = edge_tris.find(key);
    if (it == edge_tris.end())
      throw std::runtime_error("boundary edge (" + std::to_string(be.v0) + "," +
                               std::to_string(be.v1) + ") is not a mesh edge");
    if (it->second.size() != 1)
      throw std::runtime_error("boundary edge (" + std::to_string(be.v0) + "," +
                               std::to_string(be.v1) + ") belongs to " +
                               std::to_string(it->second.size()) + " triangles");
    be.tri = it->second[0].first;
    be.local_edge = it->second[0].second;
  }

  // Every triangle edge used once or twice; edges used once must be tagged boundary edges.
  {
    std::map<std::array<int, 2>, int> bnd;
    for (int i = 0; i < static_cast<int>(boundary_edges.size()); ++i)
      if (!bnd.emplace(sorted_pair(boundary_edges[i].v0, boundary_edges[i].v1), i).second)
        throw std::runtime_error("duplicate boundary edge");
    for (const auto& [key, tris] : edge_tris) {
      if (tris.size() > 2) throw std::runtime_error("non-manifold edge");
      if (tris.size() == 1 && bnd.find(key) == bnd.end())
        throw std::runtime_error("untagged boundary edge (" + std::to_string(key[0]) + "," +
                                 std::to_string(key[1]) + ")");
      if (tris.size() == 2 && bnd.find(key) != bnd.end())
        throw std::runtime_error("interior edge tagged as boundary");
    }
  }

  // Chain the Gamma_d edges into a single closed simple loop.
  design_loop.clear();
  std::map<int, std::vector<int>> adjacency;  // vertex -> neighbor vertices via Gamma_d edges
  int n_design = 0;
  for (const auto& be : boundary_edges) {
    if (be.tag != BoundaryTag::GammaD) continue;
    ++n_design;
    adjacency[be.v0].push_back(be.v1);
    adjacency[be.v1].push_back(be.v0);
  }
  if (n_design > 0) {
    for (const auto& [v, nbrs] : adjacency)
      if (nbrs.size() != 2)
        throw std::runtime_error("design boundary not a single closed loop (vertex " +
                                 std::to_string(v) + " has " + std::to_string(nbrs.size()) +
                                 " design edges)");
    const int start = adjacency.begin()->first;
    int prev = -1, cur = start;
    do {
      design_loop.push_back(cur);
      const auto& nbrs = adjacency[cur];
      const int next = (nbrs[0] == prev) ? nbrs[1] : nbrs[0];
      prev = cur;
      cur = next;
    } while (cur != start && static_cast<int>(design_loop.size()) <= n_design);
    if (static_cast<int>(design_loop.size()) != n_design)
      throw std::runtime_error("design boundary not a single closed loop");

    // Orient CCW around the obstacle (positive shoelace area).
    double twice_area = 0.0;
    for (int i = 0; i < n_design; ++i) {
      const Eigen::Vector2d a = vertices[design_loop[i]];
      const Eigen::Vector2d b = vertices[design_loop[(i + 1) % n_design]];
      twice_area += a.x() * b.y() - b.x() * a.y();
    }
    if (twice_area == 0.0) throw std::runtime_error("degenerate design loop");
    if (twice_area < 0.0) std::reverse(design_loop.begin(), design_loop.end());

    for (int i = 0; i < n_design; ++i)
      if (design_edge_length(i) < 1e-14) throw std::runtime_error("degenerate design edge");
  }

  // Loop position map and per-loop-edge boundary edge index.
  loop_position.assign(nv, -1);
  for (int i = 0; i < static_cast<int>(design_loop.size()); ++i)
    loop_position[design_loop[i]] = i;
  design_edge_index.assign(design_loop.size(), -1);
  {
    std::map<std::array<int, 2>, int> bnd;
    for (int i = 0; i < static_cast<int>(boundary_edges.size()); ++i)
      bnd[sorted_pair(boundary_edges[i].v0, boundary_edges[i].v1)] = i;
    for (int i = 0; i < static_cast<int>(design_loop.size()); ++i) {
      const auto [a, b] = design_edge_vertices(i);
      design_edge_index[i] = bnd.at(sorted_pair(a, b));
    }
  }

  // Gamma_d must keep positive distance from the rest of the boundary.
  if (!design_loop.empty()) {
    std::set<int> other;
    for (const auto& be : boundary_edges)
      if (be.tag != BoundaryTag::GammaD) {
        other.insert(be.v0);
        other.insert(be.v1);
      }
    double dmin = std::numeric_limits<double>::infinity();
    for (int v : design_loop)
      for (int u : other) {
        if (u == v) { dmin = 0.0; break; }
        dmin = std::min(dmin, (vertices[u] - vertices[v]).norm());
      }
    if (!other.empty() && dmin <= 0.0)
      throw std::runtime_error("design boundary touches the outer boundary");
  }
}

std::vector<Eigen::Vector2d> design_normals(const TriMesh& mesh) {
  const int m = mesh.n_design_edges();
  if (m == 0) return {};
  std::vector<Eigen::Vector2d> normals(m);
  for (int i = 0; i < m; ++i) {
    const int prev = (i + m - 1) % m;
    const Eigen::Vector2d n =
        mesh.design_edge_length(prev) * mesh.design_edge_normal(prev) +
        mesh.design_edge_length(i) * mesh.design_edge_normal(i);
    const double len = n.norm();
    if (len < 1e-14) throw std::runtime_error("degenerate vertex normal on design loop");
    normals[i] = n / len;
  }
  return normals;
}

double design_polygon_area(const TriMesh& mesh) {
  const int m = mesh.n_design_edges();
  double twice_area = 0.0;
  for (int i = 0; i < m; ++i) {
    const Eigen::Vector2d a = mesh.vertices[mesh.design_loop[i]];
    const Eigen::Vector2d b = mesh.vertices[mesh.design_loop[(i + 1) % m]];
    twice_area += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * twice_area;
}

}  // namespace mapshape
