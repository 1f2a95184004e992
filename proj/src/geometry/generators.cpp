#include "grl/geometry/generators.hpp"

#include <cmath>
#include <cstdint>
#include <unordered_map>

#include <Eigen/Geometry>

#include "grl/error.hpp"

namespace grl::geometry {

namespace {

TriMesh icosahedron() {
  TriMesh m;
  const double z = 1.0 / std::sqrt(5.0);
  const double r = 2.0 / std::sqrt(5.0);
  m.vertices.push_back(Vec3(0, 0, 1));
  m.vertices.push_back(Vec3(0, 0, -1));
  for (int k = 0; k < 5; ++k) {
    const double a = 2.0 * kPi * k / 5.0;
    m.vertices.push_back(Vec3(r * std::cos(a), r * std::sin(a), z));
  }
  for (int k = 0; k < 5; ++k) {
    const double a = 2.0 * kPi * (k + 0.5) / 5.0;
    m.vertices.push_back(Vec3(r * std::cos(a), r * std::sin(a), -z));
  }
  auto upper = [](int k) { return 2 + (k % 5); };
  auto lower = [](int k) { return 7 + (k % 5); };
  for (int k = 0; k < 5; ++k) {
    m.faces.push_back({0, upper(k), upper(k + 1)});
    m.faces.push_back({upper(k), lower(k), upper(k + 1)});
    m.faces.push_back({upper(k + 1), lower(k), lower(k + 1)});
    m.faces.push_back({1, lower(k + 1), lower(k)});
  }
  // Orient outward.
  for (std::size_t f = 0; f < m.faces.size(); ++f) {
    auto& t = m.faces[f];
    const Vec3 centroid = (m.vertices[t[0]] + m.vertices[t[1]] + m.vertices[t[2]]) / 3.0;
    if (face_normal(m, f).dot(centroid) < 0.0) std::swap(t[1], t[2]);
  }
  return m;
}

void subdivide_on_sphere(TriMesh& m) {
  std::unordered_map<std::uint64_t, int> midpoint;
  midpoint.reserve(m.faces.size() * 2);
  auto mid = [&](int a, int b) {
    const int lo = std::min(a, b);
    const int hi = std::max(a, b);
    const std::uint64_t key = (static_cast<std::uint64_t>(lo) << 32) | static_cast<std::uint32_t>(hi);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const int idx = static_cast<int>(m.vertices.size());
    m.vertices.push_back((m.vertices[lo] + m.vertices[hi]).normalized());
    midpoint.emplace(key, idx);
    return idx;
  };
  std::vector<Face> faces;
  faces.reserve(m.faces.size() * 4);
  for (const auto& t : m.faces) {
    const int ab = mid(t[0], t[1]);
    const int bc = mid(t[1], t[2]);
    const int ca = mid(t[2], t[0]);
    faces.push_back({t[0], ab, ca});
    faces.push_back({t[1], bc, ab});
    faces.push_back({t[2], ca, bc});
    faces.push_back({ab, bc, ca});
  }
  m.faces = std::move(faces);
}

constexpr int kSouthPole = 1;

Eigen::Quaterniond rotation_taking_south_pole_to(const Vec3& dir) {
  const Vec3 south(0, 0, -1);
  if ((dir - south).norm() <= 1e-15) return Eigen::Quaterniond::Identity();
  return Eigen::Quaterniond::FromTwoVectors(south, dir);
}

}  // namespace

TriMesh unit_icosphere(int level) {
  if (level < 0) throw Error(ErrorKind::Input, "subdivision level must be nonnegative");
  if (level > kMaxSubdivisionLevel)
    throw Error(ErrorKind::Size, "subdivision level above 8 exceeds the memory guard");
  TriMesh m = icosahedron();
  for (int l = 0; l < level; ++l) subdivide_on_sphere(m);
  return m;
}

TriMesh mesh_surface(const ParamSurface& surface, int level) {
  TriMesh m = unit_icosphere(level);
  const bool through_origin = surface.passes_through_origin();
  Eigen::Matrix3d rot = Eigen::Matrix3d::Identity();
  if (through_origin) {
    const Vec3 pre = surface.to_unit(Vec3::Zero()).normalized();
    rot = rotation_taking_south_pole_to(pre).toRotationMatrix();
  }
  for (auto& v : m.vertices) v = surface.from_unit(rot * v);
  if (through_origin) {
    m.vertices[kSouthPole].setZero();
    m.basepoint = kSouthPole;
  }
  return m;
}

TriMesh gen_icosphere(int level, const Vec3& center, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorKind::Input, "radius must be positive");
  return mesh_surface(ParamSurface::sphere(center, radius), level);
}

TriMesh mesh_radial(int level, const std::function<double(const Vec3&)>& radius) {
  TriMesh m = unit_icosphere(level);
  for (auto& v : m.vertices) {
    const double r = radius(v);
    if (!(r > 0.0)) throw Error(ErrorKind::Input, "radial function must be positive");
    v *= r;
  }
  const Vec3 shift = m.vertices[kSouthPole];
  for (auto& v : m.vertices) v -= shift;
  m.vertices[kSouthPole].setZero();
  m.basepoint = kSouthPole;
  return m;
}

}  // namespace grl::geometry
