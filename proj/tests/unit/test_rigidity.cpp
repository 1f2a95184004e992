#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "grl/error.hpp"
#include "grl/geometry/generators.hpp"
#include "grl/geometry/measure.hpp"
#include "grl/rigidity/identities.hpp"

using namespace grl;
using namespace grl::rigidity;
using geometry::GeometrySample;
using geometry::ParamSurface;

namespace {

GeometrySample make(const Vec3& y, const Vec3& n, double h) {
  GeometrySample s;
  s.point = y;
  s.normal = n;
  s.mean_curvature = h;
  s.support_quotient = y.dot(n) / y.squaredNorm();
  return s;
}

ParamSurface test_ellipsoid() { return ParamSurface::ellipsoid(Vec3(0, 0, 1.5), Vec3(1, 1, 1.5)).normalized_area(); }

// Frozen from oracle::surface2_max at 64x64 (128x128 agrees to 0.2%).
constexpr double kEllipsoidSurface2Max = 1.01232;

}  // namespace

TEST_CASE("surface2 on the sphere through the origin", "[rigidity]") {
  const auto top = make(Vec3(0, 0, 2), Vec3(0, 0, 1), 2.0);
  const auto side = make(Vec3(1, 0, 1), Vec3(1, 0, 0), 2.0);
  CHECK(surface2_value(2.0, *top.support_quotient) == 0.0);
  CHECK(surface2_value(2.0, *side.support_quotient) == 0.0);

  const auto s = ParamSurface::sphere(Vec3(0, 0, 1), 1.0);
  const auto samples = geometry::sample_surface(s, s.sample_grid(64, 64));
  const auto rep = surface2_residual(samples);
  CHECK(rep.max_abs <= 1e-12);
  CHECK(rep.flagged.empty());
  CHECK(rep.excluded == 0);
}

TEST_CASE("surface2 on the area-4pi ellipsoid", "[rigidity]") {
  const auto e = test_ellipsoid();
  const auto rep = surface2_residual(geometry::sample_surface(e, e.sample_grid(64, 64)));
  CHECK(rep.max_abs > 0.05);
  CHECK(rep.max_abs == Catch::Approx(kEllipsoidSurface2Max).epsilon(1e-4));
}

TEST_CASE("surface2 flags tangential samples and excludes the origin", "[rigidity]") {
  std::vector<GeometrySample> samples{make(Vec3(1, 0, 0), Vec3(0, 1, 0), 2.0)};
  GeometrySample origin;
  origin.point = Vec3::Zero();
  origin.normal = Vec3(0, 0, -1);
  samples.push_back(origin);
  const auto rep = surface2_residual(samples);
  CHECK(rep.flagged == std::vector<std::size_t>{0});
  CHECK(rep.excluded == 1);
  CHECK(std::isnan(rep.residual[1]));

  const auto mc = mean_curvature_identity(samples);
  CHECK(mc.singular == 1);
  CHECK(mc.rows[0].singular);
  CHECK_FALSE(mc.all_geq2);
}

TEST_CASE("surface2 is rotation invariant", "[rigidity]") {
  const auto e = test_ellipsoid();
  const auto samples = geometry::sample_surface(e, e.sample_grid(16, 16));
  const Mat3 r = Eigen::AngleAxisd(1.1, Vec3(0.3, -1, 0.2).normalized()).toRotationMatrix();
  auto rotated = samples;
  for (auto& s : rotated) {
    s.point = r * s.point;
    s.normal = r * s.normal;
    s.support_quotient = s.point.dot(s.normal) / s.point.squaredNorm();
  }
  const auto a = surface2_residual(samples), b = surface2_residual(rotated);
  for (std::size_t i = 0; i < samples.size(); ++i) CHECK(std::abs(a.residual[i] - b.residual[i]) <= 1e-12);
}

TEST_CASE("mean-curvature identity", "[rigidity]") {
  SECTION("sphere gap vanishes") {
    const auto s = ParamSurface::sphere(Vec3(0, 0, 1), 1.0);
    const auto rep = mean_curvature_identity(geometry::sample_surface(s, s.sample_grid(32, 32)));
    CHECK(rep.max_abs_gap <= 1e-12);
    CHECK(rep.all_geq2);
    CHECK(rep.min_rhs == Catch::Approx(2.0).margin(1e-12));
  }
  SECTION("AM-GM on random quotients") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> lq(std::log(1e-4), std::log(1e4));
    for (int k = 0; k < 100000; ++k) {
      const double q = std::exp(lq(rng));
      const double rhs = mean_curvature_rhs(q);
      REQUIRE(rhs >= 2.0);
      // a + 1/a with a = 2q
      REQUIRE(std::abs(rhs - (2 * q + 1 / (2 * q))) == 0.0);
    }
    CHECK(mean_curvature_rhs(0.5) == 2.0);
  }
  SECTION("ellipsoid gap is nonzero") {
    const auto e = test_ellipsoid();
    const auto rep = mean_curvature_identity(geometry::sample_surface(e, e.sample_grid(32, 32)));
    CHECK(rep.max_abs_gap > 1e-3);
    CHECK(rep.all_geq2);
  }
}

TEST_CASE("umbilic probe", "[rigidity]") {
  const std::vector<double> radii{0.1, 0.05, 0.025};
  SECTION("sphere") {
    const auto rep = umbilic_probe(ParamSurface::sphere(Vec3(0, 0, 1), 1.0), radii);
    for (const auto& d : rep.directions) {
      CHECK(d.expected == Catch::Approx(0.5));
      CHECK(std::abs(d.limit - 0.5) <= 1e-12);
    }
  }
  SECTION("ellipsoid (1,2,2) at (0,0,2)") {
    const auto rep = umbilic_probe(ParamSurface::ellipsoid(Vec3(0, 0, 2), Vec3(1, 2, 2)), radii);
    REQUIRE(rep.directions.size() == 2);
    CHECK(rep.directions[0].expected == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(rep.directions[1].expected == Catch::Approx(0.25).epsilon(1e-12));
    CHECK(rep.max_error <= 1e-4);
    // The extrapolated error shrinks between radius pairs.
    for (const auto& d : rep.directions)
      if (d.pair_errors[0] > 1e-13) CHECK(d.pair_errors[0] / std::max(d.pair_errors[1], 1e-300) >= 1.8);
  }
  SECTION("ellipsoid (1,1,2) at (0,0,2) is umbilic with k = 2") {
    const auto e = ParamSurface::ellipsoid(Vec3(0, 0, 2), Vec3(1, 1, 2));
    const auto rep = umbilic_probe(e, radii);
    for (const auto& d : rep.directions) CHECK(std::abs(d.limit - 1.0) <= 1e-4);
    CHECK(std::abs(e.frame(Vec3::Zero()).gauss_curvature - 4.0) <= 1e-12);
  }
  SECTION("input errors") {
    const auto s = ParamSurface::sphere(Vec3(0, 0, 1), 1.0);
    CHECK_THROWS_AS(umbilic_probe(s, {0.05, 0.1}), Error);
    CHECK_THROWS_AS(umbilic_probe(s, {0.1}), Error);
    CHECK_THROWS_AS(umbilic_probe(ParamSurface::sphere(Vec3(0, 0, 2), 1.0), radii), Error);
  }
}

TEST_CASE("n-dimensional conformal identity", "[rigidity]") {
  Eigen::VectorXd y(4);
  y << 0, 0, 0, 2;
  const auto a = conformal_nd_check(3, 1.0, {y});
  CHECK(a.rows[0].rhs == Catch::Approx(1.0).epsilon(1e-15));
  CHECK(a.rows[0].lhs == 1.0);

  const auto b = conformal_nd_check(4, 2.0, sample_hypersphere(4, 2.0, 50, 9));
  for (const auto& r : b.rows) {
    CHECK(r.lhs == 0.5);
    CHECK(std::abs(r.rhs - 0.5) <= 1e-12);
  }
  for (int n : {3, 4, 5})
    for (double r : {0.5, 1.0, 2.0}) CHECK(conformal_nd_check(n, r, sample_hypersphere(n, r, 100, 1)).max_abs_gap <= 1e-12);

  SECTION("off-sphere sample") {
    Eigen::VectorXd z = y;
    z(3) += 1e-6;
    CHECK_THROWS_AS(conformal_nd_check(3, 1.0, {z}), Error);
    CHECK_THROWS_AS(conformal_nd_check(2, 1.0, {}), Error);
    CHECK_THROWS_AS(conformal_nd_check(3, 1.0, {Eigen::VectorXd::Zero(3)}), Error);
  }
}

TEST_CASE("mesh-path samples are labelled and carry discretization error", "[rigidity]") {
  const auto m = geometry::rescale_to_area(geometry::gen_icosphere(4, Vec3(0, 0, 1), 1.0));
  const auto rep = surface2_residual(geometry::vertex_geometry(m).samples);
  CHECK(rep.excluded >= 1);
  CHECK(rep.max_abs > 1e-6);
  CHECK(rep.rms < 0.05);
  CHECK(to_string(SamplePath::Mesh) == "mesh");
  CHECK(to_string(SamplePath::ClosedForm) == "closed-form");
}
