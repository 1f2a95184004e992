#pragma once

#include <cstddef>

#include "grl/geometry/trimesh.hpp"
#include "grl/greensolve/laplace.hpp"

namespace grl::greensolve {

// Discrete Green function of the Laplace-Beltrami operator with a unit point
// source at `basepoint`, normalised to mass-weighted mean zero.
struct GreenField {
  int basepoint = -1;
  Vector values;
  bool mean_zero_gauge = true;
  int iterations = 0;
  double relative_residual = 0.0;
};

struct GreenOptions {
  double relative_tolerance = 1e-10;
  int max_iterations = 20000;
  Exec exec = Exec::Parallel;
};

/// Solves S G = e_p - m / Area, then removes the mass-weighted mean.
GreenField solve_green(const LaplaceOperator& op, const geometry::TriMesh& mesh, int p,
                       const GreenOptions& opts = {});

struct LogFitReport {
  double c = 0.0;
  double max_residual = 0.0;
  double rms_residual = 0.0;  // mass-weighted
  std::size_t excluded_count = 0;
  std::size_t vertex_count = 0;
  double area = 0.0;
};

inline constexpr double kDefaultExclusionRadius = 0.3;

/// Fits G_i = -(1/2pi) ln|y_i - y_p| + c in the mass-weighted least-squares
/// sense over vertices farther than `exclusion_radius` (chordal) from the
/// source. Throws Error(Configuration) if the radius is nonpositive or every
/// vertex is excluded.
LogFitReport fit_log_constant(const GreenField& field, const geometry::TriMesh& mesh, const Vector& mass,
                              double exclusion_radius = kDefaultExclusionRadius);

}  // namespace grl::greensolve
