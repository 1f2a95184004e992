#include "grl/rigidity/identities.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "grl/error.hpp"

namespace grl::rigidity {

using grl::Vec3;

std::string to_string(SamplePath path) {
  return path == SamplePath::ClosedForm ? "closed-form" : "mesh";
}

double surface2_value(double mean_curvature, double support_quotient) {
  const double q = support_quotient;
  return 2.0 * q * q - mean_curvature * q + 0.5;
}

namespace {

bool tangential(const GeometrySample& s) {
  const double r = s.point.norm();
  return std::abs(s.point.dot(s.normal)) <= kTangentialTolerance * r;
}

}  // namespace

Surface2Report surface2_residual(const std::vector<GeometrySample>& samples, Exec exec) {
  const std::size_t n = samples.size();
  Surface2Report rep;
  rep.residual.assign(n, std::numeric_limits<double>::quiet_NaN());
  parallel_for(
      n,
      [&](std::size_t i) {
        const auto& s = samples[i];
        if (s.support_quotient) rep.residual[i] = surface2_value(s.mean_curvature, *s.support_quotient);
      },
      exec);

  double sq = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!samples[i].support_quotient) {
      ++rep.excluded;
      continue;
    }
    if (tangential(samples[i])) rep.flagged.push_back(i);
    const double r = rep.residual[i];
    rep.max_abs = std::max(rep.max_abs, std::abs(r));
    sq += r * r;
    ++used;
  }
  rep.rms = used ? std::sqrt(sq / used) : 0.0;
  return rep;
}

double mean_curvature_rhs(double support_quotient) {
  return 2.0 * support_quotient + 1.0 / (2.0 * support_quotient);
}

MeanCurvatureReport mean_curvature_identity(const std::vector<GeometrySample>& samples, double tol, Exec exec) {
  const std::size_t n = samples.size();
  MeanCurvatureReport rep;
  rep.rows.resize(n);
  parallel_for(
      n,
      [&](std::size_t i) {
        const auto& s = samples[i];
        MeanCurvatureRow& row = rep.rows[i];
        row.lhs = s.mean_curvature;
        if (!s.support_quotient) return;
        if (tangential(s)) {
          row.singular = true;
          row.rhs = row.gap = std::numeric_limits<double>::quiet_NaN();
          return;
        }
        row.rhs = mean_curvature_rhs(*s.support_quotient);
        row.gap = row.lhs - row.rhs;
        row.geq2 = row.rhs >= 2.0 - tol;
      },
      exec);

  rep.min_rhs = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rep.rows[i];
    if (!samples[i].support_quotient) {
      ++rep.excluded;
      continue;
    }
    if (row.singular) {
      ++rep.singular;
      rep.all_geq2 = false;
      continue;
    }
    rep.max_abs_gap = std::max(rep.max_abs_gap, std::abs(row.gap));
    rep.min_rhs = std::min(rep.min_rhs, row.rhs);
    rep.all_geq2 = rep.all_geq2 && row.geq2;
  }
  return rep;
}

UmbilicReport umbilic_probe(const geometry::ParamSurface& surface, const std::vector<double>& radii,
                            int richardson_order) {
  if (radii.size() < 2) throw Error(ErrorKind::Input, "umbilic probe needs at least two radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw Error(ErrorKind::Input, "radii must be positive");
    if (i > 0 && !(radii[i] < radii[i - 1])) throw Error(ErrorKind::Input, "radii must be strictly decreasing");
  }
  if (richardson_order < 1) throw Error(ErrorKind::Input, "Richardson order must be at least 1");
  if (!surface.passes_through_origin(1e-12))
    throw Error(ErrorKind::Configuration, "surface does not pass through the origin");
  const geometry::SurfaceFrame origin = surface.frame(Vec3::Zero());
  if (std::abs(std::abs(origin.normal.z()) - 1.0) > 1e-12)
    throw Error(ErrorKind::Configuration, "tangent plane at the origin is not horizontal");

  auto quotient = [&](const Vec3& dir, double r) {
    const double x = r * dir.x();
    const double y = r * dir.y();
    const auto z = surface.sheet_height(x, y);
    if (!z) throw Error(ErrorKind::Domain, "probe radius leaves the surface sheet");
    const Vec3 p(x, y, *z);
    return p.dot(surface.normal(p)) / p.squaredNorm();
  };
  auto extrapolate = [&](double r_big, double q_big, double r_small, double q_small) {
    const double w = std::pow(r_big / r_small, richardson_order);
    return (w * q_small - q_big) / (w - 1.0);
  };

  UmbilicReport rep;
  rep.radii = radii;
  const std::pair<Vec3, double> axes[2] = {{origin.dir1, origin.k1}, {origin.dir2, origin.k2}};
  for (const auto& [dir, kappa] : axes) {
    UmbilicDirection d;
    d.direction = dir;
    d.expected = 0.5 * kappa;
    for (double r : radii) d.quotients.push_back(quotient(dir, r));
    for (std::size_t i = 1; i < radii.size(); ++i) {
      const double est = extrapolate(radii[i - 1], d.quotients[i - 1], radii[i], d.quotients[i]);
      d.pair_errors.push_back(std::abs(est - d.expected));
      d.limit = est;
    }
    rep.max_error = std::max(rep.max_error, std::abs(d.limit - d.expected));
    rep.directions.push_back(std::move(d));
  }
  return rep;
}

ConformalReport conformal_nd_check(int n, double r, const std::vector<Eigen::VectorXd>& samples, Exec exec) {
  if (n < 3) throw Error(ErrorKind::Input, "dimension must be at least 3");
  if (!(r > 0.0)) throw Error(ErrorKind::Input, "radius must be positive");
  const auto dim = static_cast<Eigen::Index>(n + 1);
  Eigen::VectorXd center = Eigen::VectorXd::Zero(dim);
  center(n) = r;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].size() != dim)
      throw Error(ErrorKind::Input, "sample " + std::to_string(i) + " has the wrong dimension");
    if (std::abs((samples[i] - center).norm() - r) > 1e-10)
      throw Error(ErrorKind::Input, "sample " + std::to_string(i) + " is off the sphere");
    if (samples[i].norm() <= 1e-12) throw Error(ErrorKind::Input, "sample at the origin");
  }

  const double nn = n;
  const double scalar_curvature = nn * (nn - 1.0) / (r * r);
  const double h_avg = 1.0 / r;

  ConformalReport rep;
  rep.dimension = n;
  rep.radius = r;
  rep.rows.resize(samples.size());
  parallel_for(
      samples.size(),
      [&](std::size_t i) {
        const Eigen::VectorXd& y = samples[i];
        const Eigen::VectorXd nu = (y - center) / r;
        const double yn = y.dot(nu);
        const double y2 = y.squaredNorm();
        ConformalRow& row = rep.rows[i];
        row.lhs = h_avg;
        row.rhs = yn / y2 + scalar_curvature / (4.0 * nn * (nn - 1.0)) * y2 / yn;
        row.gap = row.lhs - row.rhs;
      },
      exec);
  for (const auto& row : rep.rows) rep.max_abs_gap = std::max(rep.max_abs_gap, std::abs(row.gap));
  return rep;
}

std::vector<Eigen::VectorXd> sample_hypersphere(int n, double r, std::size_t count, unsigned long long seed) {
  if (n < 1 || !(r > 0.0)) throw Error(ErrorKind::Input, "invalid hypersphere");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  while (out.size() < count) {
    Eigen::VectorXd u(n + 1);
    for (int k = 0; k <= n; ++k) u(k) = gauss(rng);
    const double len = u.norm();
    if (len == 0.0) continue;
    u /= len;
    if (u(n) < -0.9) continue;
    Eigen::VectorXd y = r * u;
    y(n) += r;
    out.push_back(std::move(y));
  }
  return out;
}

}  // namespace grl::rigidity
