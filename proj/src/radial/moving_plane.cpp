#include "grl/radial/moving_plane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "grl/error.hpp"

namespace grl::radial {

Vec3 reflect(const Vec3& x, double theta_plane) {
  if (std::abs(x.norm() - 1.0) > 1e-12) throw Error(ErrorKind::Input, "reflect expects a unit vector");
  const Vec3 v(-std::sin(theta_plane), 0.0, std::cos(theta_plane));
  return x - 2.0 * x.dot(v) * v;
}

double latitude_ratio(double alpha, double gamma) {
  if (!(alpha > 0.0 && alpha <= gamma && gamma < kHalfPi))
    throw Error(ErrorKind::Input, "latitude_ratio needs 0 < alpha <= gamma < pi/2");
  return std::sin(2.0 * gamma - alpha) / std::sin(alpha);
}

namespace {

Vec3 unit_point(double theta, double phi) {
  const double c = std::cos(theta);
  return {c * std::cos(phi), c * std::sin(phi), std::sin(theta)};
}

// Visits (theta, phi, rho) nodes; `lookup` returns rho at an arbitrary point
// or nothing when it lies below the collar.
template <class Nodes, class Lookup>
ReflectionReport sweep(double theta_plane, double sigma, Nodes&& for_each_node, Lookup&& lookup) {
  if (!(theta_plane > 0.0 && theta_plane < kHalfPi)) throw Error(ErrorKind::Input, "plane angle must lie in (0, pi/2)");
  if (!(sigma >= 0.0)) throw Error(ErrorKind::Input, "sigma must be nonnegative");
  const Vec3 v(-std::sin(theta_plane), 0.0, std::cos(theta_plane));

  ReflectionReport rep;
  rep.theta_plane = theta_plane;
  rep.sigma = sigma;
  rep.min_w = std::numeric_limits<double>::infinity();
  rep.min_w_sigma = std::numeric_limits<double>::infinity();
  for_each_node([&](double theta, double phi, double rho) {
    const Vec3 x = unit_point(theta, phi);
    if (!(x.dot(v) < 0.0) || x.z() <= 0.0) return;
    const Vec3 xr = x - 2.0 * x.dot(v) * v;
    const double tr = std::asin(std::clamp(xr.z(), -1.0, 1.0));
    const double pr = std::atan2(xr.y(), xr.x());
    const std::optional<double> reflected = lookup(tr, pr);
    if (!reflected) {
      ++rep.skipped;
      return;
    }
    ++rep.checked;
    const double w = *reflected - rho;
    rep.min_w = std::min(rep.min_w, w);
    const double ws = w + std::max(sigma / x.z() - 1.0, 0.0);
    rep.min_w_sigma = std::min(rep.min_w_sigma, ws);
    if (ws < -kOmegaTolerance) ++rep.omega_count;
  });
  rep.omega_empty = rep.omega_count == 0;
  return rep;
}

}  // namespace

ReflectionReport moving_plane_report(const HemisphereGrid& grid, double theta_plane, double sigma) {
  grid.validate();
  auto nodes = [&](auto&& visit) {
    for (int i = 0; i < grid.n_theta; ++i)
      for (int j = 0; j < grid.n_phi; ++j) visit(grid.theta(i), grid.phi(j), grid.at(i, j));
  };
  auto lookup = [&](double theta, double phi) -> std::optional<double> {
    if (theta < grid.theta_collar) return std::nullopt;
    return interpolate(grid, theta, phi);
  };
  return sweep(theta_plane, sigma, nodes, lookup);
}

ReflectionReport moving_plane_report(const RadialProfile& profile, double theta_plane, double sigma, int n_phi) {
  const auto& th = profile.thetas;
  if (th.size() < 2 || profile.u.size() != th.size()) throw Error(ErrorKind::Input, "profile needs at least two nodes");
  if (n_phi < 1) throw Error(ErrorKind::Input, "n_phi must be positive");
  for (std::size_t k = 0; k < th.size(); ++k) {
    if (!(profile.u[k] > 0.0)) throw Error(ErrorKind::Input, "profile must stay positive");
    if (k > 0 && !(th[k] > th[k - 1])) throw Error(ErrorKind::Input, "profile thetas must increase");
  }
  std::vector<double> rho(th.size());
  for (std::size_t k = 0; k < th.size(); ++k) rho[k] = std::log(profile.u[k]);

  auto nodes = [&](auto&& visit) {
    for (std::size_t k = 0; k < th.size(); ++k)
      for (int j = 0; j < n_phi; ++j) visit(th[k], 2.0 * kPi * j / n_phi, rho[k]);
  };
  auto lookup = [&](double theta, double) -> std::optional<double> {
    if (theta < th.front()) return std::nullopt;
    if (theta >= th.back()) return rho.back();
    const auto it = std::upper_bound(th.begin(), th.end(), theta);
    const std::size_t k = static_cast<std::size_t>(it - th.begin());
    const double a = (theta - th[k - 1]) / (th[k] - th[k - 1]);
    return (1.0 - a) * rho[k - 1] + a * rho[k];
  };
  return sweep(theta_plane, sigma, nodes, lookup);
}

}  // namespace grl::radial
