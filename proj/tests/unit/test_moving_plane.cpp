#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "grl/radial/asymptotics.hpp"
#include "grl/radial/moving_plane.hpp"
#include "kinds.hpp"

using namespace grl;
using namespace grl::radial;

namespace {

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return Vec3(g(rng), g(rng), g(rng)).normalized();
}

RadialProfile exact_profile(int nodes, double theta0) {
  RadialProfile p;
  for (int k = 0; k < nodes; ++k) {
    const double t = theta0 + (kHalfPi - theta0) * k / (nodes - 1);
    p.thetas.push_back(t);
    p.u.push_back(2 * std::sin(t));
    p.du.push_back(2 * std::cos(t));
  }
  return p;
}

}  // namespace

TEST_CASE("reflection", "[moving-plane]") {
  const Vec3 r = reflect(Vec3(0, 0, 1), kHalfPi / 2);
  CHECK((r - Vec3(1, 0, 0)).norm() <= 1e-15);

  std::mt19937_64 rng(8);
  for (int k = 0; k < 1000; ++k) {
    const Vec3 x = random_unit(rng);
    const double tp = 0.1 + 1.3 * k / 1000.0;
    const Vec3 y = reflect(x, tp);
    REQUIRE(std::abs(y.norm() - 1) <= 1e-14);
    REQUIRE((reflect(y.normalized(), tp) - x).norm() <= 1e-14);
  }
  // Fixed great circle: span of e2 and (cos tp, 0, sin tp).
  const double tp = 0.6;
  const Vec3 fixed = (0.3 * Vec3(0, 1, 0) + 0.8 * Vec3(std::cos(tp), 0, std::sin(tp))).normalized();
  CHECK((reflect(fixed, tp) - fixed).norm() <= 1e-15);
  CHECK(kind_of([] { reflect(Vec3(0, 0, 1.1), 0.5); }) == ErrorKind::Input);
}

TEST_CASE("latitude ratio", "[moving-plane]") {
  CHECK(latitude_ratio(kHalfPi / 4, kHalfPi / 2) == Catch::Approx(1 + std::sqrt(2.0)).epsilon(1e-14));
  CHECK(latitude_ratio(0.4, 0.4) == Catch::Approx(1.0).epsilon(1e-15));
  for (double g : {0.3, 0.7, 1.2})
    for (double a = 0.05; a <= g; a += 0.05) {
      const Vec3 x(std::cos(a), 0, std::sin(a));
      CHECK(std::abs(reflect(x, g).z() / x.z() - latitude_ratio(a, g)) <= 1e-12);
    }
  CHECK(kind_of([] { latitude_ratio(0.5, 0.4); }) == ErrorKind::Input);
  CHECK(kind_of([] { latitude_ratio(0.0, 0.4); }) == ErrorKind::Input);
  CHECK(kind_of([] { latitude_ratio(0.2, kHalfPi); }) == ErrorKind::Input);
}

TEST_CASE("exact profile satisfies w >= 0", "[moving-plane]") {
  const auto prof = exact_profile(1000, 1e-3);
  for (int k = 1; k <= 9; ++k) {
    const double tp = kHalfPi * k / 10;
    const auto rep = moving_plane_report(prof, tp);
    CHECK(rep.min_w >= -1e-12);
    CHECK(rep.checked > 0);
    const auto sig = moving_plane_report(prof, tp, 1.0);
    CHECK(sig.omega_empty);
    CHECK(sig.min_w_sigma >= rep.min_w);
  }
}

TEST_CASE("exact grid satisfies w >= 0", "[moving-plane]") {
  const auto g = HemisphereGrid::from_function(0.05, 64, 64, [](double th, double) { return std::log(2 * std::sin(th)); });
  for (double tp : {kHalfPi / 4, kHalfPi / 2, 3 * kHalfPi / 4}) {
    const auto rep = moving_plane_report(g, tp);
    CHECK(rep.min_w >= -1e-12);
  }
}

TEST_CASE("a tilted profile breaks the reflection inequality", "[moving-plane]") {
  // For rho = ln(2 <c, x>), w < 0 on the reflected cap exactly when
  // <c, v> < 0, i.e. tilt + plane angle > pi/2.
  const double tilt = 0.3;
  const auto g = HemisphereGrid::from_function(0.5, 64, 64, [tilt](double th, double ph) {
    return std::log(2 * (std::sin(tilt) * std::cos(th) * std::cos(ph) + std::cos(tilt) * std::sin(th)));
  });
  const auto rep = moving_plane_report(g, 1.3);
  CHECK(rep.min_w < 0.0);
  CHECK_FALSE(moving_plane_report(g, 1.3, 0.0).omega_empty);
}

TEST_CASE("moving plane input errors", "[moving-plane]") {
  const auto prof = exact_profile(10, 0.01);
  CHECK(kind_of([&] { moving_plane_report(prof, 0.0); }) == ErrorKind::Input);
  CHECK(kind_of([&] { moving_plane_report(prof, 0.5, -1.0); }) == ErrorKind::Input);
  auto bad = prof;
  bad.u[3] = 0;
  CHECK(kind_of([&] { moving_plane_report(bad, 0.5); }) == ErrorKind::Input);
  bad = prof;
  std::swap(bad.thetas[2], bad.thetas[3]);
  CHECK(kind_of([&] { moving_plane_report(bad, 0.5); }) == ErrorKind::Input);
}

TEST_CASE("collar asymptotics", "[asymptotics]") {
  const auto exact = HemisphereGrid::from_function(0.05, 128, 64, [](double th, double) { return std::log(2 * std::sin(th)); });
  const auto a = asymptotics_check(exact);
  CHECK(a.pass);
  CHECK(a.rows.size() == 3);
  CHECK(a.ratio1_deviation <= 1e-12);
  CHECK(a.ratio2_max <= 1e-2);
  CHECK(a.raw_max == Catch::Approx(2 * std::sin(exact.theta(2))).epsilon(1e-3));

  const auto prof = asymptotics_check(exact_profile(200, 0.05));
  CHECK(prof.pass);
  CHECK(prof.ratio2_max <= 1e-12);

  const auto zero = asymptotics_check(HemisphereGrid::from_function(0.05, 32, 32, [](double, double) { return 0.0; }));
  CHECK_FALSE(zero.ratio1_ok);
  CHECK_FALSE(zero.pass);

  const auto tilt = asymptotics_check(HemisphereGrid::from_function(0.5, 64, 64, [](double th, double ph) {
    return std::log(2 * (std::sin(0.3) * std::cos(th) * std::cos(ph) + std::cos(0.3) * std::sin(th)));
  }));
  CHECK_FALSE(tilt.pass);
}
