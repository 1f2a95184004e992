#include "grl/radial/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "grl/error.hpp"

namespace grl::radial {

OdeResidual ode_residual(double u, double du, double ddu, double theta) {
  if (!(u > 0.0)) throw Error(ErrorKind::Domain, "ode_residual requires u > 0");
  if (!(theta > 0.0 && theta <= kHalfPi)) throw Error(ErrorKind::Domain, "theta must lie in (0, pi/2]");
  const double s = u * u + du * du;
  const double rest = u * u * ddu - u * du * du + 0.5 * u * s * s;
  if (theta == kHalfPi) return {std::cos(theta) * rest - std::sin(theta) * du * s, true};
  return {rest - std::tan(theta) * du * s, false};
}

SeriesStart series_start(double theta0) {
  if (!(theta0 > 0.0 && theta0 <= 0.01)) throw Error(ErrorKind::Input, "series start needs theta0 in (0, 0.01]");
  return {2.0 * std::sin(theta0), 2.0 * std::cos(theta0)};
}

double ode_acceleration(double theta, double u, double du) {
  const double s = u * u + du * du;
  if (theta >= kHalfPi) return (u * du * du - 0.5 * u * s * s) / (2.0 * u * u + du * du);
  return (u * du * du + std::tan(theta) * du * s - 0.5 * u * s * s) / (u * u);
}

ShootResult shoot(double theta0, double u0, double s0, double h) {
  if (!(u0 > 0.0)) throw Error(ErrorKind::Input, "shoot requires u0 > 0");
  if (!(h > 0.0 && h <= 1e-3)) throw Error(ErrorKind::Input, "step must lie in (0, 1e-3]");
  if (!(theta0 >= 1e-6 && theta0 < kHalfPi)) throw Error(ErrorKind::Input, "theta0 must lie in [1e-6, pi/2)");

  const double span = kHalfPi - theta0;
  const auto steps = static_cast<std::size_t>(std::ceil(span / h - 1e-9));
  const double dt = span / static_cast<double>(steps);

  ShootResult res;
  auto& prof = res.profile;
  prof.thetas.reserve(steps + 1);
  prof.u.reserve(steps + 1);
  prof.du.reserve(steps + 1);
  prof.thetas.push_back(theta0);
  prof.u.push_back(u0);
  prof.du.push_back(s0);

  double u = u0;
  double p = s0;
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = theta0 + static_cast<double>(k) * dt;
    const double t_next = k + 1 == steps ? kHalfPi : theta0 + static_cast<double>(k + 1) * dt;
    const double t_mid = t + 0.5 * dt;

    const double ku1 = p;
    const double kp1 = ode_acceleration(t, u, p);
    const double ku2 = p + 0.5 * dt * kp1;
    const double kp2 = ode_acceleration(t_mid, u + 0.5 * dt * ku1, ku2);
    const double ku3 = p + 0.5 * dt * kp2;
    const double kp3 = ode_acceleration(t_mid, u + 0.5 * dt * ku2, ku3);
    const double ku4 = p + dt * kp3;
    const double kp4 = ode_acceleration(t_next, u + dt * ku3, ku4);

    u += dt / 6.0 * (ku1 + 2.0 * ku2 + 2.0 * ku3 + ku4);
    p += dt / 6.0 * (kp1 + 2.0 * kp2 + 2.0 * kp3 + kp4);

    if (!std::isfinite(u) || !std::isfinite(p) || u <= 0.0 || std::abs(p) > kBlowUpSlope) {
      res.aborted = true;
      res.abort_angle = t_next;
      res.abort_reason = (std::isfinite(u) && u <= 0.0) ? "u <= 0" : "|u'| > 1e6";
      return res;
    }
    prof.thetas.push_back(t_next);
    prof.u.push_back(u);
    prof.du.push_back(p);
  }
  return res;
}

UniquenessReport uniqueness_probe(double beta, double theta0, double h) {
  if (!(std::abs(beta) <= 10.0)) throw Error(ErrorKind::Input, "|beta| must not exceed 10");
  const SeriesStart jet = series_start(theta0);
  const ShootResult shot = shoot(theta0, jet.u0 + beta * theta0 * theta0, jet.s0, h);

  UniquenessReport rep;
  rep.beta = beta;
  rep.theta0 = theta0;
  rep.step = h;
  const auto& prof = shot.profile;
  for (std::size_t i = 0; i < prof.thetas.size(); ++i)
    rep.sup_error = std::max(rep.sup_error, std::abs(prof.u[i] - 2.0 * std::sin(prof.thetas[i])));

  if (shot.aborted) {
    rep.pole_defect = std::numeric_limits<double>::infinity();
    rep.pole_value = std::numeric_limits<double>::quiet_NaN();
    rep.abort_angle = shot.abort_angle;
    rep.singular_coefficient = std::numeric_limits<double>::quiet_NaN();
    return rep;
  }
  rep.pole_defect = std::abs(prof.du.back());
  rep.pole_value = prof.u.back();

  const double target = kHalfPi - 0.01;
  const auto it = std::lower_bound(prof.thetas.begin(), prof.thetas.end(), target);
  const std::size_t i = std::min<std::size_t>(it - prof.thetas.begin(), prof.thetas.size() - 1);
  const double s = kHalfPi - prof.thetas[i];
  rep.singular_coefficient = s * (prof.du[i] - 2.0 * std::cos(prof.thetas[i]));
  return rep;
}

double operator_value(double second, double slope, double value, double theta) {
  const double m = second, p = slope, z = value;
  const double s = z * z + p * p;
  return m - p * p / z - std::tan(theta) * p * s / (z * z) + s * s / (2.0 * z);
}

Linearization linearized_coeffs(double second, double slope, double value, double theta) {
  if (!(value > 0.0)) throw Error(ErrorKind::Domain, "linearization requires Z > 0");
  if (!(theta > 0.0 && theta < kHalfPi)) throw Error(ErrorKind::Domain, "theta must lie in (0, pi/2)");
  const double p = slope, z = value;
  const double t = std::tan(theta);
  const double s = z * z + p * p;
  Linearization lin;
  lin.value = operator_value(second, slope, value, theta);
  lin.d_second = 1.0;
  // d/dP [P (Z^2 + P^2)] = Z^2 + 3 P^2
  lin.d_slope = -2.0 * p / z - t * (z * z + 3.0 * p * p) / (z * z) + 2.0 * s * p / z;
  // -P^2/Z -> P^2/Z^2;  -t P (1 + P^2 Z^-2) -> 2 t P^3 / Z^3;  s^2/(2Z) -> 2 s - s^2/(2 Z^2)
  lin.d_value = p * p / (z * z) + 2.0 * t * p * p * p / (z * z * z) + 2.0 * s - s * s / (2.0 * z * z);
  return lin;
}

}  // namespace grl::radial
