#pragma once

#include <functional>

#include "grl/geometry/param_surface.hpp"
#include "grl/geometry/trimesh.hpp"

namespace grl::geometry {

inline constexpr int kMaxSubdivisionLevel = 8;

/// Unit icosphere: icosahedron with vertices at +-e3, refined `level` times by
/// 1-to-4 splits with every new vertex projected to the sphere. Vertex 1 is
/// the south pole (0, 0, -1). Throws Error(Size) for level > 8.
TriMesh unit_icosphere(int level);

/// Icosphere of the given center and radius. When the sphere passes through
/// the origin the mesh is rotated so that a vertex lands there; that vertex
/// is snapped exactly to the origin and marked as basepoint.
TriMesh gen_icosphere(int level, const Vec3& center, double radius);

/// Mesh of an analytic surface through the affine image of a unit icosphere,
/// with the same origin snapping rule as gen_icosphere.
TriMesh mesh_surface(const ParamSurface& surface, int level);

/// Star-shaped-about-its-center surface y = R(w) w for unit directions w,
/// translated so the direction -e3 lands on the origin (basepoint).
TriMesh mesh_radial(int level, const std::function<double(const Vec3&)>& radius);

}  // namespace grl::geometry
