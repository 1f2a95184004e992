#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "grl/geometry/param_surface.hpp"
#include "grl/parallel.hpp"

namespace grl::kelvin {

inline constexpr double kPointThreshold = 1e-12;
inline constexpr double kConformalExclusion = 1e-3;
inline constexpr double kOriginExclusion = 0.05;

/// y / |y|^2. Throws Error(Singularity) for |y| <= 1e-12.
Vec3 kelvin_point(const Vec3& y);

// D Phi(y) = (I - 2 yhat yhat^T) / |y|^2.
Mat3 kelvin_jacobian(const Vec3& y);

struct ConformalSample {
  Vec3 point;
  double factor = 0.0;  // |y|^-4
  double gap = 0.0;     // max entry of |Gram - factor I| / factor
};

struct ConformalReport {
  std::vector<ConformalSample> samples;
  double max_gap = 0.0;
};

// Pulls the Euclidean metric back through Phi on the tangent plane of each
// sample. The gap is relative to |y|^-4, which spans 1e-5..1e12 over the
// admissible range. Throws Error(Singularity) if a sample lies within 1e-3
// of the origin.
ConformalReport conformal_factor_check(const geometry::ParamSurface& surface, const std::vector<Vec3>& samples,
                                       Exec exec = Exec::Parallel);

enum class CurvatureMethod { ClosedForm, FiniteDifference };
std::string to_string(CurvatureMethod method);

// Central-difference step in the (u, v) parameters of the composed immersion
// Phi(X(u, v)); one Richardson level on h and h/2.
inline constexpr double kDefaultFdStep = 1e-3;

// Gaussian curvature of Phi(M) at Phi(q).
double image_gauss_curvature(const geometry::ParamSurface& surface, const Vec3& q, CurvatureMethod method,
                             double fd_step = kDefaultFdStep);

struct CorrespondenceRow {
  Vec3 point;
  Vec3 image;
  double image_curvature = 0.0;  // K~ at Phi(q)
  double surface_curvature = 0.0;
  double rhs = 0.0;  // |Phi(q)|^-4 (K(q) - 1)
  double residual = 0.0;
};

struct CorrespondenceReport {
  CurvatureMethod method = CurvatureMethod::ClosedForm;
  double fd_step = 0.0;
  std::vector<CorrespondenceRow> rows;
  std::size_t skipped = 0;  // |q| < 0.05
  double max_abs_residual = 0.0;
};

/// Throws Error(Configuration) if the surface misses the origin and
/// Error(Input) for a sample off the surface by more than 1e-9.
CorrespondenceReport curvature_correspondence_residual(const geometry::ParamSurface& surface,
                                                       const std::vector<Vec3>& samples, CurvatureMethod method,
                                                       double fd_step = kDefaultFdStep, Exec exec = Exec::Parallel);

// Uniformly distributed directions mapped onto the surface by its affine map.
std::vector<Vec3> random_points(const geometry::ParamSurface& surface, std::size_t count, unsigned long long seed);

}  // namespace grl::kelvin
