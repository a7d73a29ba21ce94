#include "mapshape/gmsh_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mapshape {

TagMap default_tag_map() {
  return {{1, BoundaryTag::GammaIn},
          {2, BoundaryTag::GammaOut},
          {3, BoundaryTag::GammaNs},
          {4, BoundaryTag::GammaD}};
}

namespace {

std::string next_content_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (!line.empty()) return line;
  }
  throw std::runtime_error("unexpected end of MSH file");
}

void expect(const std::string& got, const std::string& want) {
  if (got != want) throw std::runtime_error("expected '" + want + "', got '" + got + "'");
}

}  // namespace

TriMesh load_gmsh(const std::string& path, const TagMap& tags) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mesh file: " + path);

  expect(next_content_line(in), "$MeshFormat");
  {
    std::istringstream fmt(next_content_line(in));
    double version = 0.0;
    int file_type = -1, data_size = -1;
    fmt >> version >> file_type >> data_size;
    if (!fmt || version != 2.2 || file_type != 0 || data_size != 8)
      throw std::runtime_error("unsupported MSH format (need ASCII v2.2): " + path);
  }
  expect(next_content_line(in), "$EndMeshFormat");

  TriMesh mesh;
  std::map<int, int> node_index;  // file node id -> vertex index

  std::string section;
  while (true) {
    std::string line;
    if (!std::getline(in, line)) break;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line.empty()) continue;
    section = line;

    if (section == "$PhysicalNames") {
      const int n = std::stoi(next_content_line(in));
      for (int i = 0; i < n; ++i) next_content_line(in);
      expect(next_content_line(in), "$EndPhysicalNames");
    } else if (section == "$Nodes") {
      const int n = std::stoi(next_content_line(in));
      mesh.vertices.reserve(n);
      for (int i = 0; i < n; ++i) {
        std::istringstream ls(next_content_line(in));
        int id;
        double x, y, z;
        ls >> id >> x >> y >> z;
        if (!ls) throw std::runtime_error("malformed node line in " + path);
        node_index[id] = static_cast<int>(mesh.vertices.size());
        mesh.vertices.emplace_back(x, y);
      }
      expect(next_content_line(in), "$EndNodes");
    } else if (section == "$Elements") {
      const int n = std::stoi(next_content_line(in));
      for (int i = 0; i < n; ++i) {
        std::istringstream ls(next_content_line(in));
        int id, type, ntags;
        ls >> id >> type >> ntags;
        int physical = 0;
        for (int t = 0; t < ntags; ++t) {
          int tag;
          ls >> tag;
          if (t == 0) physical = tag;
        }
        if (type == 1) {  // 2-node line
          int a, b;
          ls >> a >> b;
          if (!ls) throw std::runtime_error("malformed line element in " + path);
          auto it = tags.find(physical);
          if (it == tags.end())
            throw std::runtime_error("line element with unknown physical tag " +
                                     std::to_string(physical) + " in " + path);
          BoundaryEdge be;
          be.v0 = node_index.at(a);
          be.v1 = node_index.at(b);
          be.tag = it->second;
          mesh.boundary_edges.push_back(be);
        } else if (type == 2) {  // 3-node triangle
          int a, b, c;
          ls >> a >> b >> c;
          if (!ls) throw std::runtime_error("malformed triangle element in " + path);
          mesh.triangles.push_back({node_index.at(a), node_index.at(b), node_index.at(c)});
        } else if (type == 15) {  // point element: ignored
          continue;
        } else {
          throw std::runtime_error("unsupported element type " + std::to_string(type) +
                                   " in " + path);
        }
      }
      expect(next_content_line(in), "$EndElements");
    } else if (!section.empty() && section[0] == '$') {
      // Skip unknown section.
      const std::string end = "$End" + section.substr(1);
      while (next_content_line(in) != end) {}
    }
  }

  if (mesh.vertices.empty()) throw std::runtime_error("no nodes in " + path);
  if (mesh.triangles.empty()) throw std::runtime_error("no triangles in " + path);

  // Normalize triangle orientation to CCW before validation.
  for (auto& tri : mesh.triangles) {
    const Eigen::Vector2d a = mesh.vertices[tri[0]];
    const Eigen::Vector2d b = mesh.vertices[tri[1]];
    const Eigen::Vector2d c = mesh.vertices[tri[2]];
    const double twice_area =
        (b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y());
    if (twice_area < 0.0) std::swap(tri[1], tri[2]);
  }

  mesh.finalize();
  return mesh;
}

void save_gmsh(const TriMesh& mesh, const std::string& path, const TagMap& tags) {
  std::map<BoundaryTag, int> inverse;
  for (const auto& [id, tag] : tags) inverse[tag] = id;
  if (inverse.size() != 4) throw std::runtime_error("tag map must cover all four boundary tags");

  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot write mesh file: " + path);

  std::fprintf(f, "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n");
  std::fprintf(f, "$Nodes\n%d\n", mesh.n_vertices());
  for (int i = 0; i < mesh.n_vertices(); ++i)
    std::fprintf(f, "%d %.17g %.17g 0\n", i + 1, mesh.vertices[i].x(), mesh.vertices[i].y());
  std::fprintf(f, "$EndNodes\n");

  const int n_elems = static_cast<int>(mesh.boundary_edges.size()) + mesh.n_triangles();
  std::fprintf(f, "$Elements\n%d\n", n_elems);
  int id = 1;
  for (const auto& be : mesh.boundary_edges) {
    const int phys = inverse.at(be.tag);
    std::fprintf(f, "%d 1 2 %d %d %d %d\n", id++, phys, phys, be.v0 + 1, be.v1 + 1);
  }
  for (const auto& tri : mesh.triangles)
    std::fprintf(f, "%d 2 2 10 10 %d %d %d\n", id++, tri[0] + 1, tri[1] + 1, tri[2] + 1);
  std::fprintf(f, "$EndElements\n");
  std::fclose(f);
}

}  // namespace mapshape
