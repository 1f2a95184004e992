#pragma once

#include <optional>
#include <vector>

#include "grl/geometry/param_surface.hpp"
#include "grl/geometry/trimesh.hpp"

namespace grl::geometry {

// Pointwise ingredients of the rigidity identities.
struct GeometrySample {
  Vec3 point;
  Vec3 normal;
  double mean_curvature = 0.0;
  double gauss_curvature = 0.0;
  // <y, nu> / |y|^2; empty at the origin (and, for meshes, on the
  // basepoint's one-ring).
  std::optional<double> support_quotient;
};

GeometrySample sample_at(const ParamSurface& surface, const Vec3& y);
std::vector<GeometrySample> sample_surface(const ParamSurface& surface, const std::vector<Vec3>& pts,
                                           Exec exec = Exec::Parallel);

// Discrete per-vertex geometry: angle-weighted normals, cotangent mean
// curvature (H = -<L x, nu>), angle-defect Gaussian curvature, barycentric
// vertex areas.
struct VertexGeometry {
  std::vector<GeometrySample> samples;
  std::vector<double> vertex_area;
  std::vector<double> angle_defect;
};

VertexGeometry vertex_geometry(const TriMesh& mesh, Exec exec = Exec::Parallel);

struct StarShapeReport {
  double min_support = 0.0;  // min <y, nu> over non-excluded vertices
  double max_support = 0.0;
  double min_support_quotient = 0.0;
  bool sign_consistent = false;
  std::size_t checked = 0;
  std::size_t excluded = 0;
};

/// Requires a basepoint; throws Error(Configuration) otherwise.
StarShapeReport star_shape_check(const TriMesh& mesh, Exec exec = Exec::Parallel);

}  // namespace grl::geometry
