#pragma once

#include <cstddef>
#include <functional>

#include "grl/geometry/trimesh.hpp"
#include "grl/radial/hemisphere.hpp"
#include "grl/radial/ode.hpp"

namespace grl::radial {

// Reflection across the great circle orthogonal to
// v = cos(theta_p) e3 - sin(theta_p) e1. Requires |x| = 1 within 1e-12.
Vec3 reflect(const Vec3& x, double theta_plane);

// sin(2 gamma - alpha) / sin(alpha), for 0 < alpha <= gamma < pi/2.
double latitude_ratio(double alpha, double gamma);

inline constexpr double kOmegaTolerance = 1e-12;

struct ReflectionReport {
  double theta_plane = 0.0;
  double min_w = 0.0;  // over nodes with <x, v> < 0
  double sigma = 0.0;
  double min_w_sigma = 0.0;
  bool omega_empty = true;       // no node with w_sigma < -1e-12
  std::size_t omega_count = 0;
  std::size_t checked = 0;
  std::size_t skipped = 0;  // reflection lands below the collar
};

/// Reflected values come from bilinear interpolation on the grid.
ReflectionReport moving_plane_report(const HemisphereGrid& grid, double theta_plane, double sigma = 0.0);

/// Profile extended by rotational symmetry (rho = ln u, linear in theta
/// between profile nodes), sampled at n_phi azimuths per profile node.
ReflectionReport moving_plane_report(const RadialProfile& profile, double theta_plane, double sigma = 0.0,
                                     int n_phi = 64);

}  // namespace grl::radial
