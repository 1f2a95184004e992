#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "grl/parallel.hpp"

namespace grl {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kFourPi = 4.0 * kPi;

}  // namespace grl

namespace grl::geometry {

using Face = std::array<int, 3>;

// Closed oriented triangle mesh. The optional basepoint is a vertex sitting
// at the origin; it plays the role of the Green-function source.
struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  std::optional<int> basepoint;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t face_count() const { return faces.size(); }
};

/// Throws Error(Validation) naming the first violated invariant: closedness,
/// consistent orientation, face area floor, basepoint at the origin.
void validate(const TriMesh& mesh);

bool is_connected(const TriMesh& mesh);

double bounding_box_diagonal(const TriMesh& mesh);
double face_area(const TriMesh& mesh, std::size_t f);
Vec3 face_normal(const TriMesh& mesh, std::size_t f);  // unit
double total_area(const TriMesh& mesh, Exec exec = Exec::Parallel);

/// Uniform scaling about the origin so the total area equals `target`.
/// The basepoint, being at the origin, stays fixed.
TriMesh rescale_to_area(const TriMesh& mesh, double target = kFourPi);

/// Vertex indices adjacent to v (one-ring), sorted.
std::vector<int> one_ring(const TriMesh& mesh, int v);

// Vertex -> incident (face, corner) pairs in ascending face order.
struct VertexFaceIncidence {
  std::vector<std::size_t> offsets;  // size n+1
  std::vector<std::size_t> faces;
  std::vector<int> corners;
};
VertexFaceIncidence build_incidence(const TriMesh& mesh);

}  // namespace grl::geometry
