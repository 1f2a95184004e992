#include "grl/greensolve/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <unordered_map>

#include "grl/error.hpp"

namespace grl::greensolve {

using geometry::TriMesh;

double LaplaceOperator::area() const {
  return deterministic_sum(static_cast<std::size_t>(mass.size()),
                           [&](std::size_t i) { return mass[static_cast<Eigen::Index>(i)]; });
}

namespace {

// Cotangent of the corner angle opposite each edge of every face.
std::vector<std::array<double, 3>> corner_cotangents(const TriMesh& mesh, Exec exec) {
  std::vector<std::array<double, 3>> cot(mesh.faces.size());
  parallel_for(
      mesh.faces.size(),
      [&](std::size_t f) {
        const auto& t = mesh.faces[f];
        for (int k = 0; k < 3; ++k) {
          const Vec3& p = mesh.vertices[t[k]];
          const Vec3 e1 = mesh.vertices[t[(k + 1) % 3]] - p;
          const Vec3 e2 = mesh.vertices[t[(k + 2) % 3]] - p;
          cot[f][k] = e1.dot(e2) / e1.cross(e2).norm();
        }
      },
      exec);
  return cot;
}

struct EdgeRef {
  int lo;
  int hi;
  std::size_t face[2];
  int corner[2];  // corner opposite the edge in each face
};

std::vector<EdgeRef> collect_edges(const TriMesh& mesh) {
  std::unordered_map<std::uint64_t, std::size_t> index;
  index.reserve(mesh.faces.size() * 2);
  std::vector<EdgeRef> edges;
  edges.reserve(mesh.faces.size() * 3 / 2);
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const auto& t = mesh.faces[f];
    for (int k = 0; k < 3; ++k) {
      const int a = t[(k + 1) % 3];
      const int b = t[(k + 2) % 3];
      const int lo = std::min(a, b);
      const int hi = std::max(a, b);
      const std::uint64_t key = (static_cast<std::uint64_t>(lo) << 32) | static_cast<std::uint32_t>(hi);
      auto [it, inserted] = index.emplace(key, edges.size());
      if (inserted) {
        edges.push_back(EdgeRef{lo, hi, {f, f}, {k, -1}});
      } else {
        EdgeRef& e = edges[it->second];
        e.face[1] = f;
        e.corner[1] = k;
      }
    }
  }
  return edges;
}

}  // namespace

LaplaceOperator assemble(const TriMesh& mesh, Exec exec) {
  const std::size_t nv = mesh.vertices.size();
  const auto cot = corner_cotangents(mesh, exec);
  const auto edges = collect_edges(mesh);

  std::vector<double> weight(edges.size());
  parallel_for(
      edges.size(),
      [&](std::size_t e) {
        const EdgeRef& r = edges[e];
        double w = cot[r.face[0]][r.corner[0]];
        if (r.corner[1] >= 0) w += cot[r.face[1]][r.corner[1]];
        weight[e] = 0.5 * w;
      },
      exec);

  // Row layout: per vertex, neighbours sorted by index with the diagonal in place.
  std::vector<std::vector<std::pair<int, std::size_t>>> adj(nv);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    adj[edges[e].lo].emplace_back(edges[e].hi, e);
    adj[edges[e].hi].emplace_back(edges[e].lo, e);
  }

  LaplaceOperator op;
  CsrMatrix& s = op.stiffness;
  s.rows = static_cast<int>(nv);
  s.row_ptr.assign(nv + 1, 0);
  for (std::size_t v = 0; v < nv; ++v) s.row_ptr[v + 1] = s.row_ptr[v] + static_cast<int>(adj[v].size()) + 1;
  s.col.resize(static_cast<std::size_t>(s.row_ptr[nv]));
  s.val.resize(s.col.size());

  parallel_for(
      nv,
      [&](std::size_t v) {
        auto& nb = adj[v];
        std::sort(nb.begin(), nb.end());
        double diag = 0.0;
        for (const auto& [j, e] : nb) diag += weight[e];
        int k = s.row_ptr[v];
        bool placed = false;
        for (const auto& [j, e] : nb) {
          if (!placed && j > static_cast<int>(v)) {
            s.col[k] = static_cast<int>(v);
            s.val[k++] = diag;
            placed = true;
          }
          s.col[k] = j;
          s.val[k++] = -weight[e];
        }
        if (!placed) {
          s.col[k] = static_cast<int>(v);
          s.val[k] = diag;
        }
      },
      exec);

  const auto inc = geometry::build_incidence(mesh);
  op.mass.resize(static_cast<Eigen::Index>(nv));
  parallel_for(
      nv,
      [&](std::size_t v) {
        double a = 0.0;
        for (std::size_t k = inc.offsets[v]; k < inc.offsets[v + 1]; ++k)
          a += geometry::face_area(mesh, inc.faces[k]) / 3.0;
        op.mass[static_cast<Eigen::Index>(v)] = a;
      },
      exec);
  return op;
}

double smallest_nonzero_eigenvalue(const LaplaceOperator& op, double tol, int max_iter) {
  const Eigen::Index n = op.mass.size();
  const double area = op.area();
  auto deflate = [&](Vector& v) { v.array() -= dot(op.mass, v) / area; };
  auto mnorm = [&](const Vector& v) { return std::sqrt(dot(v, op.mass.cwiseProduct(v))); };

  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Vector x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = uni(rng);
  deflate(x);
  x /= mnorm(x);

  CgOptions cg;
  cg.relative_tolerance = 1e-12;
  double lambda = 0.0;
  Vector sx(n);
  for (int it = 0; it < max_iter; ++it) {
    const Vector rhs = op.mass.cwiseProduct(x);
    Vector y = conjugate_gradient(op.stiffness, rhs, cg, &x).x;
    deflate(y);
    y /= mnorm(y);
    op.stiffness.multiply(y, sx);
    const double next = dot(y, sx);
    x = y;
    if (it > 0 && std::abs(next - lambda) <= tol * std::abs(next)) return next;
    lambda = next;
  }
  throw SolverError("inverse iteration did not converge", lambda, max_iter);
}

}  // namespace grl::greensolve
