#include "grl/greensolve/green.hpp"

#include <algorithm>
#include <cmath>

#include "grl/error.hpp"

namespace grl::greensolve {

GreenField solve_green(const LaplaceOperator& op, const geometry::TriMesh& mesh, int p,
                       const GreenOptions& opts) {
  const Eigen::Index n = op.mass.size();
  if (p < 0 || p >= n) throw Error(ErrorKind::Input, "source vertex out of range");
  if (static_cast<std::size_t>(n) != mesh.vertices.size())
    throw Error(ErrorKind::Configuration, "operator and mesh sizes differ");
  if (!geometry::is_connected(mesh)) throw Error(ErrorKind::Configuration, "mesh is not connected");

  const double area = op.area();
  Vector rhs = -op.mass / area;
  rhs[p] += 1.0;

  CgOptions cg;
  cg.relative_tolerance = opts.relative_tolerance;
  cg.max_iterations = opts.max_iterations;
  cg.exec = opts.exec;
  CgResult sol = conjugate_gradient(op.stiffness, rhs, cg);

  GreenField g;
  g.basepoint = p;
  g.values = std::move(sol.x);
  g.values.array() -= dot(op.mass, g.values, opts.exec) / area;
  g.iterations = sol.iterations;
  g.relative_residual = sol.residual_norm / sol.rhs_norm;
  return g;
}

LogFitReport fit_log_constant(const GreenField& field, const geometry::TriMesh& mesh, const Vector& mass,
                              double exclusion_radius) {
  if (!(exclusion_radius > 0.0)) throw Error(ErrorKind::Configuration, "exclusion radius must be positive");
  const std::size_t n = mesh.vertices.size();
  const Vec3& src = mesh.vertices[field.basepoint];
  constexpr double inv_two_pi = 1.0 / (2.0 * kPi);

  // shifted_i = G_i + ln|y_i - y_p| / 2pi; the optimal c is its weighted mean.
  std::vector<double> shifted(n, 0.0);
  std::vector<char> used(n, 0);
  LogFitReport rep;
  rep.vertex_count = n;
  double wsum = 0.0;
  double csum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = (mesh.vertices[i] - src).norm();
    if (!(d > exclusion_radius)) {
      ++rep.excluded_count;
      continue;
    }
    used[i] = 1;
    shifted[i] = field.values[static_cast<Eigen::Index>(i)] + inv_two_pi * std::log(d);
    wsum += mass[static_cast<Eigen::Index>(i)];
    csum += mass[static_cast<Eigen::Index>(i)] * shifted[i];
  }
  if (rep.excluded_count == n)
    throw Error(ErrorKind::Configuration, "exclusion radius removes every vertex");
  rep.c = csum / wsum;
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!used[i]) continue;
    const double r = shifted[i] - rep.c;
    rep.max_residual = std::max(rep.max_residual, std::abs(r));
    sq += mass[static_cast<Eigen::Index>(i)] * r * r;
  }
  rep.rms_residual = std::sqrt(sq / wsum);
  rep.area = mass.sum();
  return rep;
}

}  // namespace grl::greensolve
