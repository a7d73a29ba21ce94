#pragma once

#include <map>
#include <string>

#include "mapshape/mesh.hpp"

namespace mapshape {

// Physical-group id -> boundary tag. The surface physical group (triangles) is
// accepted with any id; every line element must map to one of the four tags.
using TagMap = std::map<int, BoundaryTag>;

// Default convention used by the bundled meshes: 1=Gamma_in, 2=Gamma_out,
// 3=Gamma_ns, 4=Gamma_d.
TagMap default_tag_map();

// Reads an ASCII MSH v2.2 file ($MeshFormat 2.2 0 8). Throws std::runtime_error
// on malformed input, unknown line tags, or invariant violations.
TriMesh load_gmsh(const std::string& path, const TagMap& tags = default_tag_map());

// Writes MSH v2.2 with the inverse tag convention of `tags`. Coordinates are
// printed with round-trip precision, so load(save(m)) reproduces them bit-exactly.
void save_gmsh(const TriMesh& mesh, const std::string& path,
               const TagMap& tags = default_tag_map());

}  // namespace mapshape
