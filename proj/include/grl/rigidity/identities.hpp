#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "grl/geometry/measure.hpp"
#include "grl/geometry/param_surface.hpp"
#include "grl/parallel.hpp"

namespace grl::rigidity {

using geometry::GeometrySample;

// Samples produced from closed forms or from a mesh carry different error
// budgets; reports keep the label.
enum class SamplePath { ClosedForm, Mesh };
std::string to_string(SamplePath path);

// |<y, nu>| / |y| at or below this counts as a tangential (singular) sample.
inline constexpr double kTangentialTolerance = 1e-14;

struct Surface2Report {
  std::vector<double> residual;          // NaN for excluded samples
  std::vector<std::size_t> flagged;      // <y, nu> = 0
  std::size_t excluded = 0;              // origin or basepoint one-ring
  double max_abs = 0.0;
  double rms = 0.0;
};

// 2 q^2 - H q + 1/2 with q = <y, nu> / |y|^2; vanishes exactly when the
// Green function at the origin has the pure logarithmic form.
double surface2_value(double mean_curvature, double support_quotient);

Surface2Report surface2_residual(const std::vector<GeometrySample>& samples, Exec exec = Exec::Parallel);

struct MeanCurvatureRow {
  double lhs = 0.0;  // H
  double rhs = 0.0;
  double gap = 0.0;
  bool geq2 = false;
  bool singular = false;
};

struct MeanCurvatureReport {
  std::vector<MeanCurvatureRow> rows;
  std::size_t excluded = 0;
  std::size_t singular = 0;
  double max_abs_gap = 0.0;
  double min_rhs = 0.0;
  bool all_geq2 = true;
};

// 2q + 1/(2q); at least 2 for q > 0.
double mean_curvature_rhs(double support_quotient);

MeanCurvatureReport mean_curvature_identity(const std::vector<GeometrySample>& samples, double tol = 1e-12,
                                            Exec exec = Exec::Parallel);

struct UmbilicDirection {
  grl::Vec3 direction;
  std::vector<double> quotients;  // one per radius
  double limit = 0.0;             // Richardson estimate from the two smallest radii
  double expected = 0.0;          // principal curvature / 2
  // |error| of the extrapolation from consecutive radius pairs, coarse first.
  std::vector<double> pair_errors;
};

struct UmbilicReport {
  std::vector<double> radii;
  std::vector<UmbilicDirection> directions;
  double max_error = 0.0;
};

// The quotient q(r) is even in r for these quadrics, so the default
// extrapolation removes the r^2 term.
inline constexpr int kUmbilicRichardsonOrder = 2;

/// Surface must pass through the origin with a horizontal tangent plane.
/// Throws Error(Input) if radii are not strictly decreasing and positive.
UmbilicReport umbilic_probe(const geometry::ParamSurface& surface, const std::vector<double>& radii,
                            int richardson_order = kUmbilicRichardsonOrder);

struct ConformalRow {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
};

struct ConformalReport {
  int dimension = 0;
  double radius = 0.0;
  std::vector<ConformalRow> rows;
  double max_abs_gap = 0.0;
};

// Round hypersphere of radius r in R^{n+1} centred at r e_{n+1}. Samples
// are checked to lie on it within 1e-10.
ConformalReport conformal_nd_check(int n, double r, const std::vector<Eigen::VectorXd>& samples,
                                   Exec exec = Exec::Parallel);

// Uniform points on that hypersphere with last unit coordinate >= -0.9,
// so samples stay away from the origin.
std::vector<Eigen::VectorXd> sample_hypersphere(int n, double r, std::size_t count, unsigned long long seed);

}  // namespace grl::rigidity
