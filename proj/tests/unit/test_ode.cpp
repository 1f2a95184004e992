#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "grl/radial/ode.hpp"
#include "kinds.hpp"
#include "oracles.hpp"

using namespace grl;
using namespace grl::radial;

namespace {

// Frozen from oracle::shoot at theta0 = 1e-3 (u0 + beta theta0^2, series slope).
constexpr double kDefectPlus = 7.6749e-6;   // beta = 0.2, h = 1e-4
constexpr double kDefectMinus = 7.6586e-6;  // beta = -0.2, h = 1e-4

}  // namespace

TEST_CASE("ode residual", "[ode]") {
  const double t = kHalfPi / 2;
  CHECK(std::abs(ode_residual(2 * std::sin(t), 2 * std::cos(t), -2 * std::sin(t), t).value) <= 1e-14);
  const auto c = ode_residual(1.0, 0.0, 0.0, t);
  CHECK(c.value == Catch::Approx(0.5).margin(1e-15));
  CHECK_FALSE(c.regularized);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> theta(1e-3, kHalfPi - 1e-3);
  for (int k = 0; k < 100; ++k) {
    const double s = theta(rng);
    CHECK(std::abs(ode_residual(2 * std::sin(s), 2 * std::cos(s), -2 * std::sin(s), s).value) <= 1e-12);
  }

  const auto pole = ode_residual(2.0, 0.0, -2.0, kHalfPi);
  CHECK(pole.regularized);
  CHECK(std::abs(pole.value) <= 1e-12);
}

TEST_CASE("series start", "[ode]") {
  const auto a = series_start(1e-3);
  CHECK(a.u0 == Catch::Approx(1.9999996667e-3).epsilon(1e-10));
  CHECK(a.s0 == Catch::Approx(2 * std::cos(1e-3)).epsilon(1e-14));
  CHECK(series_start(1e-2).s0 == Catch::Approx(1.9999).epsilon(1e-4));
  CHECK(kind_of([] { series_start(0.02); }) == ErrorKind::Input);
  CHECK(kind_of([] { series_start(0.0); }) == ErrorKind::Input);
}

TEST_CASE("shooting from the exact jet", "[ode]") {
  const auto jet = series_start(1e-3);
  const auto r = shoot(1e-3, jet.u0, jet.s0, 1e-4);
  REQUIRE_FALSE(r.aborted);
  CHECK(r.profile.thetas.back() == kHalfPi);
  double sup = 0;
  for (std::size_t k = 0; k < r.profile.u.size(); ++k)
    sup = std::max(sup, std::abs(r.profile.u[k] - 2 * std::sin(r.profile.thetas[k])));
  CHECK(sup <= 1e-6);
  CHECK(std::abs(r.profile.du.back()) <= 1e-6);

  const auto o = oracle::shoot(1e-3, jet.u0, jet.s0, 1e-4);
  CHECK(std::abs(r.profile.u.back() - o.u_end) <= 1e-10);

  const auto p = uniqueness_probe(0.0);
  CHECK(p.pole_defect <= 1e-6);
  CHECK(p.sup_error <= 1e-6);
  CHECK_FALSE(p.abort_angle);
}

TEST_CASE("fourth-order convergence on the exact jet", "[ode]") {
  const auto jet = series_start(1e-3);
  auto err = [&](double h) {
    const auto r = shoot(1e-3, jet.u0, jet.s0, h);
    double sup = 0;
    for (std::size_t k = 0; k < r.profile.u.size(); ++k)
      sup = std::max(sup, std::abs(r.profile.u[k] - 2 * std::sin(r.profile.thetas[k])));
    return sup;
  };
  CHECK(err(1e-3) > err(1e-4));
  CHECK(err(1e-4) <= 1e-6);
}

TEST_CASE("perturbed starts leave a pole defect", "[ode]") {
  const auto plus = uniqueness_probe(0.2);
  const auto minus = uniqueness_probe(-0.2);
  CHECK(plus.pole_defect == Catch::Approx(kDefectPlus).epsilon(0.01));
  CHECK(minus.pole_defect == Catch::Approx(kDefectMinus).epsilon(0.01));
  CHECK(std::isfinite(plus.singular_coefficient));
}

TEST_CASE("zero initial slope", "[ode]") {
  // Outcome recorded from the oracle: the profile survives to the pole with
  // u(pi/2) ~ 2e-3 and a finite slope.
  const auto r = shoot(1e-3, 2 * std::sin(1e-3), 0.0, 1e-4);
  const auto o = oracle::shoot(1e-3, 2 * std::sin(1e-3), 0.0, 1e-4);
  REQUIRE(r.aborted == o.aborted);
  if (!r.aborted) {
    CHECK(r.profile.u.back() == Catch::Approx(o.u_end).epsilon(1e-6));
    CHECK(r.profile.du.back() == Catch::Approx(o.du_end).epsilon(1e-6));
    CHECK(std::abs(r.profile.du.back()) > 1e-6);
  }
}

TEST_CASE("shoot input errors", "[ode]") {
  CHECK(kind_of([] { shoot(1e-3, 0.0, 1.0, 1e-4); }) == ErrorKind::Input);
  CHECK(kind_of([] { shoot(1e-3, 1.0, 1.0, 2e-3); }) == ErrorKind::Input);
  CHECK(kind_of([] { shoot(1e-3, 1.0, 1.0, 0.0); }) == ErrorKind::Input);
}

TEST_CASE("linearized operator", "[ode]") {
  const double t = kHalfPi / 2;
  CHECK(std::abs(operator_value(-2 * std::sin(t), 2 * std::cos(t), 2 * std::sin(t), t)) <= 1e-14);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> m(-2, 2), p(-2, 2), z(0.2, 3), th(0.05, kHalfPi - 0.05);
  const double h = 1e-6;
  for (int k = 0; k < 1000; ++k) {
    const double M = m(rng), P = p(rng), Z = z(rng), T = th(rng);
    const auto lin = linearized_coeffs(M, P, Z, T);
    REQUIRE(lin.d_second == 1.0);
    const double fp = (operator_value(M, P + h, Z, T) - operator_value(M, P - h, Z, T)) / (2 * h);
    const double fz = (operator_value(M, P, Z + h, T) - operator_value(M, P, Z - h, T)) / (2 * h);
    const double scale = 1 + std::abs(operator_value(M, P, Z, T));
    REQUIRE(std::abs(lin.d_slope - fp) <= 1e-6 * std::max(std::abs(fp), scale));
    REQUIRE(std::abs(lin.d_value - fz) <= 1e-6 * std::max(std::abs(fz), scale));
  }
  CHECK(kind_of([] { linearized_coeffs(0, 1, 0, 0.5); }) == ErrorKind::Domain);
  CHECK(kind_of([] { linearized_coeffs(0, 1, 1, kHalfPi); }) == ErrorKind::Domain);
}
