#include "grl/geometry/trimesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "grl/error.hpp"

namespace grl::geometry {

namespace {

std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::Validation, msg); }

}  // namespace

void validate(const TriMesh& mesh) {
  const int n = static_cast<int>(mesh.vertices.size());
  if (n == 0) fail("mesh has no vertices");
  if (mesh.faces.empty()) fail("mesh has no faces");

  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const auto& t = mesh.faces[f];
    for (int idx : t) {
      if (idx < 0 || idx >= n) {
        std::ostringstream os;
        os << "face " << f << " references vertex " << idx << " outside [0, " << n << ")";
        fail(os.str());
      }
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      std::ostringstream os;
      os << "face " << f << " repeats a vertex";
      fail(os.str());
    }
  }

  std::unordered_map<std::uint64_t, int> directed;
  directed.reserve(mesh.faces.size() * 3);
  for (const auto& t : mesh.faces) {
    for (int k = 0; k < 3; ++k) ++directed[edge_key(t[k], t[(k + 1) % 3])];
  }
  // Walk faces in order so the reported edge is deterministic.
  for (const auto& t : mesh.faces) {
    for (int k = 0; k < 3; ++k) {
      const int a = t[k];
      const int b = t[(k + 1) % 3];
      const int fwd = directed[edge_key(a, b)];
      const auto rev_it = directed.find(edge_key(b, a));
      const int rev = rev_it == directed.end() ? 0 : rev_it->second;
      std::ostringstream os;
      os << "edge (" << std::min(a, b) << ", " << std::max(a, b) << ") ";
      if (fwd + rev > 2) {
        os << "is shared by " << fwd + rev << " faces (non-manifold)";
        fail(os.str());
      }
      if (rev == 0) {
        os << "belongs to a single face (open boundary)";
        fail(os.str());
      }
      if (fwd != 1 || rev != 1) {
        os << "is traversed in the same direction by two faces (inconsistent orientation)";
        fail(os.str());
      }
    }
  }

  const double diag = bounding_box_diagonal(mesh);
  const double area_floor = 1e-14 * diag * diag;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    if (!(face_area(mesh, f) >= area_floor)) {
      std::ostringstream os;
      os << "face " << f << " is degenerate (area below 1e-14 * diag^2)";
      fail(os.str());
    }
  }

  if (mesh.basepoint) {
    const int b = *mesh.basepoint;
    if (b < 0 || b >= n) fail("basepoint index out of range");
    if (mesh.vertices[b].norm() > 1e-12 * diag) fail("basepoint vertex is not at the origin");
  }
}

bool is_connected(const TriMesh& mesh) {
  const std::size_t n = mesh.vertices.size();
  if (n == 0) return false;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& t : mesh.faces) {
    for (int k = 0; k < 3; ++k) {
      const int a = find(t[k]);
      const int b = find(t[(k + 1) % 3]);
      if (a != b) parent[a] = b;
    }
  }
  const int root = find(0);
  for (std::size_t v = 1; v < n; ++v) {
    if (find(static_cast<int>(v)) != root) return false;
  }
  return true;
}

double bounding_box_diagonal(const TriMesh& mesh) {
  if (mesh.vertices.empty()) return 0.0;
  Vec3 lo = mesh.vertices.front();
  Vec3 hi = lo;
  for (const auto& v : mesh.vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return (hi - lo).norm();
}

double face_area(const TriMesh& mesh, std::size_t f) {
  const auto& t = mesh.faces[f];
  const Vec3& a = mesh.vertices[t[0]];
  return 0.5 * (mesh.vertices[t[1]] - a).cross(mesh.vertices[t[2]] - a).norm();
}

Vec3 face_normal(const TriMesh& mesh, std::size_t f) {
  const auto& t = mesh.faces[f];
  const Vec3& a = mesh.vertices[t[0]];
  return (mesh.vertices[t[1]] - a).cross(mesh.vertices[t[2]] - a).normalized();
}

double total_area(const TriMesh& mesh, Exec exec) {
  return deterministic_sum(
      mesh.faces.size(), [&](std::size_t f) { return face_area(mesh, f); }, exec);
}

TriMesh rescale_to_area(const TriMesh& mesh, double target) {
  if (!(target > 0.0)) throw Error(ErrorKind::Input, "target area must be positive");
  const double area = total_area(mesh);
  if (!(area > 0.0)) throw Error(ErrorKind::DegenerateInput, "mesh has zero total area");
  const double scale = std::sqrt(target / area);
  TriMesh out = mesh;
  for (auto& v : out.vertices) v *= scale;
  if (out.basepoint) out.vertices[*out.basepoint].setZero();
  return out;
}

std::vector<int> one_ring(const TriMesh& mesh, int v) {
  std::vector<int> ring;
  for (const auto& t : mesh.faces) {
    for (int k = 0; k < 3; ++k) {
      if (t[k] == v) {
        ring.push_back(t[(k + 1) % 3]);
        ring.push_back(t[(k + 2) % 3]);
      }
    }
  }
  std::sort(ring.begin(), ring.end());
  ring.erase(std::unique(ring.begin(), ring.end()), ring.end());
  return ring;
}

VertexFaceIncidence build_incidence(const TriMesh& mesh) {
  const std::size_t n = mesh.vertices.size();
  VertexFaceIncidence inc;
  inc.offsets.assign(n + 1, 0);
  for (const auto& t : mesh.faces) {
    for (int idx : t) ++inc.offsets[idx + 1];
  }
  for (std::size_t v = 0; v < n; ++v) inc.offsets[v + 1] += inc.offsets[v];
  inc.faces.resize(inc.offsets[n]);
  inc.corners.resize(inc.offsets[n]);
  std::vector<std::size_t> cursor(inc.offsets.begin(), inc.offsets.end() - 1);
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    for (int k = 0; k < 3; ++k) {
      const std::size_t slot = cursor[mesh.faces[f][k]]++;
      inc.faces[slot] = f;
      inc.corners[slot] = k;
    }
  }
  return inc;
}

}  // namespace grl::geometry
