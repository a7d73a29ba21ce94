#pragma once

#include "mapshape/spaces.hpp"
#include "mapshape/transform.hpp"

namespace mapshape {

// Quality statistics of the deformed mesh tau(Omega) = (id + w)(Omega),
// sampled at volume quadrature points of the given degree. Inverted elements
// are reported, not fatal.
QualityReport mesh_quality(const TriMesh& mesh, const Field& w, int qdegree = 5);

}  // namespace mapshape
