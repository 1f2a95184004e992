#include "grl/geometry/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "grl/error.hpp"

namespace grl::geometry {

GeometrySample sample_at(const ParamSurface& surface, const Vec3& y) {
  const SurfaceFrame fr = surface.frame(y);
  GeometrySample s;
  s.point = y;
  s.normal = fr.normal;
  s.mean_curvature = fr.mean_curvature;
  s.gauss_curvature = fr.gauss_curvature;
  const double r2 = y.squaredNorm();
  if (r2 > 0.0) s.support_quotient = y.dot(fr.normal) / r2;
  return s;
}

std::vector<GeometrySample> sample_surface(const ParamSurface& surface, const std::vector<Vec3>& pts,
                                           Exec exec) {
  std::vector<GeometrySample> out(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { out[i] = sample_at(surface, pts[i]); }, exec);
  return out;
}

namespace {

struct FaceData {
  std::array<double, 3> angle;
  std::array<double, 3> cot;
  double area;
  Vec3 normal;
};

FaceData face_data(const TriMesh& mesh, std::size_t f) {
  FaceData d;
  const auto& t = mesh.faces[f];
  for (int k = 0; k < 3; ++k) {
    const Vec3& p = mesh.vertices[t[k]];
    const Vec3 e1 = mesh.vertices[t[(k + 1) % 3]] - p;
    const Vec3 e2 = mesh.vertices[t[(k + 2) % 3]] - p;
    const double c = e1.dot(e2);
    const double s = e1.cross(e2).norm();
    d.angle[k] = std::atan2(s, c);
    d.cot[k] = c / s;
  }
  const Vec3 cr = (mesh.vertices[t[1]] - mesh.vertices[t[0]]).cross(mesh.vertices[t[2]] - mesh.vertices[t[0]]);
  d.area = 0.5 * cr.norm();
  d.normal = cr.normalized();
  return d;
}

}  // namespace

VertexGeometry vertex_geometry(const TriMesh& mesh, Exec exec) {
  const std::size_t nv = mesh.vertices.size();
  const std::size_t nf = mesh.faces.size();
  std::vector<FaceData> fd(nf);
  parallel_for(nf, [&](std::size_t f) { fd[f] = face_data(mesh, f); }, exec);

  const VertexFaceIncidence inc = build_incidence(mesh);

  std::vector<char> excluded(nv, 0);
  if (mesh.basepoint) {
    excluded[*mesh.basepoint] = 1;
    for (int w : one_ring(mesh, *mesh.basepoint)) excluded[w] = 1;
  }

  VertexGeometry out;
  out.samples.resize(nv);
  out.vertex_area.resize(nv);
  out.angle_defect.resize(nv);
  parallel_for(
      nv,
      [&](std::size_t v) {
        const Vec3& x = mesh.vertices[v];
        Vec3 normal = Vec3::Zero();
        Vec3 lap = Vec3::Zero();
        double area = 0.0;
        double angle_sum = 0.0;
        for (std::size_t s = inc.offsets[v]; s < inc.offsets[v + 1]; ++s) {
          const std::size_t f = inc.faces[s];
          const int k = inc.corners[s];
          const auto& t = mesh.faces[f];
          const int j = t[(k + 1) % 3];
          const int l = t[(k + 2) % 3];
          const FaceData& d = fd[f];
          normal += d.angle[k] * d.normal;
          area += d.area / 3.0;
          angle_sum += d.angle[k];
          // cot at corner l weighs edge (v, j); cot at corner j weighs edge (v, l)
          lap += d.cot[(k + 2) % 3] * (mesh.vertices[j] - x) + d.cot[(k + 1) % 3] * (mesh.vertices[l] - x);
        }
        normal.normalize();
        lap /= 2.0 * area;
        GeometrySample& smp = out.samples[v];
        smp.point = x;
        smp.normal = normal;
        smp.mean_curvature = -lap.dot(normal);
        out.angle_defect[v] = 2.0 * kPi - angle_sum;
        smp.gauss_curvature = out.angle_defect[v] / area;
        out.vertex_area[v] = area;
        const double r2 = x.squaredNorm();
        if (!excluded[v] && r2 > 0.0) smp.support_quotient = x.dot(normal) / r2;
      },
      exec);
  return out;
}

StarShapeReport star_shape_check(const TriMesh& mesh, Exec exec) {
  if (!mesh.basepoint)
    throw Error(ErrorKind::Configuration, "star-shape check needs a basepoint at the origin");
  const VertexGeometry geo = vertex_geometry(mesh, exec);
  StarShapeReport rep;
  rep.min_support = std::numeric_limits<double>::infinity();
  rep.max_support = -std::numeric_limits<double>::infinity();
  rep.min_support_quotient = std::numeric_limits<double>::infinity();
  for (const auto& s : geo.samples) {
    if (!s.support_quotient) {
      ++rep.excluded;
      continue;
    }
    ++rep.checked;
    const double support = s.point.dot(s.normal);
    rep.min_support = std::min(rep.min_support, support);
    rep.max_support = std::max(rep.max_support, support);
    rep.min_support_quotient = std::min(rep.min_support_quotient, *s.support_quotient);
  }
  rep.sign_consistent = rep.checked > 0 && rep.min_support > 0.0;
  return rep;
}

}  // namespace grl::geometry
