#pragma once

#include <optional>
#include <string>
#include <vector>

namespace grl::radial {

inline constexpr double kHalfPi = 1.57079632679489661923;

// Latitude profile u(theta) = e^rho with theta = arcsin <x, e3>.
struct RadialProfile {
  std::vector<double> thetas;
  std::vector<double> u;
  std::vector<double> du;
};

struct OdeResidual {
  double value = 0.0;
  bool regularized = false;  // cos(theta)-multiplied form used at the pole
};

// u^2 u'' - u u'^2 - tan(theta) u' (u^2 + u'^2) + (u/2)(u^2 + u'^2)^2.
// At theta = pi/2 the whole expression is multiplied by cos(theta).
OdeResidual ode_residual(double u, double du, double ddu, double theta);

struct SeriesStart {
  double u0 = 0.0;
  double s0 = 0.0;
};

/// Jet of 2 sin(theta) at theta0 in (0, 0.01].
SeriesStart series_start(double theta0);

inline constexpr double kBlowUpSlope = 1e6;

struct ShootResult {
  RadialProfile profile;
  bool aborted = false;
  double abort_angle = 0.0;
  std::string abort_reason;
};

// u'' as a function of (theta, u, u'); the pole uses the tan(theta) u' -> -u''
// limit, which holds for profiles with u'(pi/2) = 0.
double ode_acceleration(double theta, double u, double du);

/// Fixed-step classical RK4 from theta0 to pi/2; the step is shrunk so the
/// last node lands on pi/2. Stops early (not an error) when u <= 0 or
/// |u'| > 1e6. Throws Error(Input) if u0 <= 0 or h is outside (0, 1e-3].
ShootResult shoot(double theta0, double u0, double s0, double h);

struct UniquenessReport {
  double beta = 0.0;
  double theta0 = 0.0;
  double step = 0.0;
  double pole_defect = 0.0;  // |u'(pi/2)|, infinity on abort
  double pole_value = 0.0;   // u(pi/2), NaN on abort
  std::optional<double> abort_angle;
  // s (u' - 2 cos theta) at s = pi/2 - theta near 0.01; the coefficient of a
  // logarithmic pole singularity, roughly step independent.
  double singular_coefficient = 0.0;
  double sup_error = 0.0;  // sup |u - 2 sin theta| over the computed grid
};

UniquenessReport uniqueness_probe(double beta, double theta0 = 1e-3, double h = 1e-4);

struct Linearization {
  double value = 0.0;
  double d_second = 0.0;  // dF/dM
  double d_slope = 0.0;   // dF/dP
  double d_value = 0.0;   // dF/dZ
};

// F(M, P, Z, theta) = M - P^2/Z - tan(theta) P (Z^2 + P^2)/Z^2 + (Z^2 + P^2)^2/(2Z),
// the ODE divided by u^2 with M = u'', P = u', Z = u.
double operator_value(double second, double slope, double value, double theta);

/// Throws Error(Domain) for Z <= 0 or theta outside (0, pi/2).
Linearization linearized_coeffs(double second, double slope, double value, double theta);

}  // namespace grl::radial
