#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grl/geometry/trimesh.hpp"

namespace grl::geometry {

// Closed-form differential geometry at a surface point. H = k1 + k2 with
// respect to the outward normal, so the unit sphere has H = 2.
struct SurfaceFrame {
  Vec3 normal;
  double mean_curvature = 0.0;
  double gauss_curvature = 0.0;
  double k1 = 0.0;  // k1 >= k2
  double k2 = 0.0;
  Vec3 dir1;
  Vec3 dir2;
};

// Axis-aligned quadric surfaces: spheres and ellipsoids.
class ParamSurface {
 public:
  enum class Kind { Sphere, Ellipsoid };

  static ParamSurface sphere(const Vec3& center, double radius);
  static ParamSurface ellipsoid(const Vec3& center, const Vec3& semiaxes);

  Kind kind() const { return kind_; }
  const Vec3& center() const { return center_; }
  const Vec3& semiaxes() const { return semiaxes_; }
  std::string describe() const;

  // u in [0, pi] is the polar angle from +e3, v the azimuth.
  Vec3 point(double u, double v) const;
  Vec3 from_unit(const Vec3& dir) const { return center_ + semiaxes_.cwiseProduct(dir); }
  Vec3 to_unit(const Vec3& y) const { return (y - center_).cwiseQuotient(semiaxes_); }

  // Implicit F(y) = |diag(1/s)(y - c)|^2 - 1 with derivatives.
  double implicit(const Vec3& y) const;
  Vec3 implicit_gradient(const Vec3& y) const;
  Mat3 implicit_hessian() const;

  Vec3 normal(const Vec3& y) const;
  SurfaceFrame frame(const Vec3& y) const;

  double area() const;
  ParamSurface scaled(double factor) const;  // about the origin
  ParamSurface normalized_area(double target = kFourPi) const;

  bool passes_through_origin(double tol = 1e-12) const;

  // Height z of the sheet through the origin above the horizontal point
  // (x, y); valid when the tangent plane at the origin is horizontal.
  std::optional<double> sheet_height(double x, double y) const;

  // Parameter-grid sample: u_i = (i + 1/2) pi / nu, v_j = 2 pi j / nv.
  std::vector<Vec3> sample_grid(int nu, int nv) const;

 private:
  ParamSurface(Kind kind, const Vec3& center, const Vec3& semiaxes);

  Kind kind_;
  Vec3 center_;
  Vec3 semiaxes_;
};

// Orthonormal tangent pair (t1, t2) with t1 x t2 = n.
std::pair<Vec3, Vec3> tangent_basis(const Vec3& n);

// Surface area of an ellipsoid with the given semiaxes (Legendre form).
double ellipsoid_area(const Vec3& semiaxes);

}  // namespace grl::geometry
