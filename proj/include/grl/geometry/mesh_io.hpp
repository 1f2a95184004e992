#pragma once

#include <filesystem>
#include <iosfwd>

#include "grl/geometry/trimesh.hpp"

namespace grl::geometry {

// OFF is the interchange format; coordinates are written with 17 significant
// digits so a save/load round trip is bit-exact. On load the mesh is
// validated and a vertex lying at the origin (within 1e-12 * diag) becomes
// the basepoint.
TriMesh read_off(std::istream& in);
void write_off(const TriMesh& mesh, std::ostream& out);
TriMesh load_off(const std::filesystem::path& path);
void save_off(const TriMesh& mesh, const std::filesystem::path& path);

// OBJ import: `v` and `f` records only; faces must be triangles.
TriMesh read_obj(std::istream& in);
TriMesh load_obj(const std::filesystem::path& path);

// Dispatch on extension (.off / .obj).
TriMesh load_mesh(const std::filesystem::path& path);

}  // namespace grl::geometry
