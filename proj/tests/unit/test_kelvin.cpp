#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "grl/kelvin/kelvin.hpp"
#include "kinds.hpp"
#include "oracles.hpp"

using namespace grl;
using namespace grl::kelvin;
using geometry::ParamSurface;

namespace {

ParamSurface unit_sphere() { return ParamSurface::sphere(Vec3(0, 0, 1), 1.0); }
ParamSurface test_ellipsoid() { return ParamSurface::ellipsoid(Vec3(0, 0, 1.5), Vec3(1, 1, 1.5)).normalized_area(); }

// Frozen from oracle::kelvin_max on the 64x64 parameter grid (closed form;
// 128x128 agrees to 0.2%, step-halved differences to 1e-6).
constexpr double kEllipsoidKelvinMax = 48.7678;

}  // namespace

TEST_CASE("inversion map", "[kelvin]") {
  CHECK((kelvin_point(Vec3(0, 0, 2)) - Vec3(0, 0, 0.5)).norm() == 0.0);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int k = 0; k < 1000; ++k) {
    const Vec3 y(g(rng), g(rng), g(rng));
    REQUIRE((kelvin_point(kelvin_point(y)) - y).norm() <= 1e-13 * y.norm());
    const Vec3 u = y.normalized();
    REQUIRE((kelvin_point(u) - u).norm() <= 1e-15);
  }
  CHECK(kind_of([] { kelvin_point(Vec3(1e-13, 0, 0)); }) == ErrorKind::Singularity);

  const Vec3 y(0.3, -1.2, 0.7);
  const Mat3 j = kelvin_jacobian(y);
  const double h = 1e-6;
  for (int c = 0; c < 3; ++c) {
    const Vec3 d = Vec3::Unit(c) * h;
    const Vec3 fd = (kelvin_point(y + d) - kelvin_point(y - d)) / (2 * h);
    CHECK((j.col(c) - fd).norm() <= 1e-8);
  }
}

TEST_CASE("conformal factor", "[kelvin]") {
  const auto s = unit_sphere();
  const auto top = conformal_factor_check(s, {Vec3(0, 0, 2)});
  CHECK(top.samples[0].factor == 1.0 / 16);
  CHECK(top.max_gap <= 1e-12);

  const auto e = test_ellipsoid();
  CHECK(conformal_factor_check(e, random_points(e, 1000, 3)).max_gap <= 1e-12);
  CHECK(kind_of([&] { conformal_factor_check(s, {Vec3(0, 0, 1e-4)}); }) == ErrorKind::Singularity);
}

TEST_CASE("sphere correspondence", "[kelvin]") {
  const auto s = unit_sphere();
  const auto pts = random_points(s, 500, 7);
  for (const auto& q : pts) {
    if (q.norm() < kOriginExclusion) continue;
    REQUIRE(std::abs(kelvin_point(q).z() - 0.5) <= 1e-12);
  }
  const auto fd = curvature_correspondence_residual(s, pts, CurvatureMethod::FiniteDifference);
  CHECK(fd.max_abs_residual <= 1e-8);
  CHECK(fd.rows.size() + fd.skipped == 500);
  CHECK(fd.method == CurvatureMethod::FiniteDifference);
  const auto cf = curvature_correspondence_residual(s, pts, CurvatureMethod::ClosedForm);
  CHECK(cf.max_abs_residual <= 1e-10);
}

TEST_CASE("ellipsoid correspondence", "[kelvin]") {
  const auto e = test_ellipsoid();
  const auto grid = e.sample_grid(64, 64);
  const auto cf = curvature_correspondence_residual(e, grid, CurvatureMethod::ClosedForm);
  CHECK(cf.max_abs_residual == Catch::Approx(kEllipsoidKelvinMax).epsilon(1e-4));
  CHECK(cf.skipped > 0);

  // Closed form and differences agree sample by sample.
  const auto pts = random_points(e, 50, 5);
  for (const auto& q : pts) {
    if (q.norm() < kOriginExclusion) continue;
    const double a = image_gauss_curvature(e, q, CurvatureMethod::ClosedForm);
    const double b = image_gauss_curvature(e, q, CurvatureMethod::FiniteDifference);
    REQUIRE(std::abs(a - b) <= 1e-6 * (1 + std::abs(a)));
  }
}

TEST_CASE("image curvature against the inversion oracle", "[kelvin]") {
  const auto e = test_ellipsoid();
  const auto o = oracle::through_origin_4pi(oracle::V3(1, 1, 1.5));
  for (double u : {0.4, 1.1, 2.0, 2.8})
    for (double v : {0.0, 1.0, 4.0}) {
      const auto p = oracle::ellipsoid(o.axes, o.center, u, v);
      const Vec3 q = e.point(u, v);
      REQUIRE((q - p.x).norm() <= 1e-7);
      CHECK(image_gauss_curvature(e, q, CurvatureMethod::ClosedForm) ==
            Catch::Approx(oracle::inverted_gauss(p)).epsilon(1e-6).margin(1e-9));
    }
}

TEST_CASE("correspondence errors", "[kelvin]") {
  CHECK(kind_of([] {
          curvature_correspondence_residual(ParamSurface::sphere(Vec3(0, 0, 2), 1.0), {Vec3(0, 0, 3)},
                                            CurvatureMethod::ClosedForm);
        }) == ErrorKind::Configuration);
  CHECK(kind_of([] {
          curvature_correspondence_residual(unit_sphere(), {Vec3(0, 0, 2.1)}, CurvatureMethod::ClosedForm);
        }) == ErrorKind::Input);
  CHECK(kind_of([] {
          image_gauss_curvature(unit_sphere(), Vec3(0, 0, 2), CurvatureMethod::FiniteDifference, 0.5);
        }) == ErrorKind::Input);
  CHECK(to_string(CurvatureMethod::ClosedForm) == "closed-form");
}
