#include <cmath>
#include <memory>

#include "grl/geometry/generators.hpp"
#include "grl/geometry/measure.hpp"
#include "grl/greensolve/green.hpp"
#include "grl/greensolve/laplace.hpp"
#include "grl/kelvin/kelvin.hpp"
#include "grl/radial/asymptotics.hpp"
#include "grl/radial/hemisphere.hpp"
#include "grl/radial/lemmas.hpp"
#include "grl/radial/moving_plane.hpp"
#include "grl/radial/ode.hpp"
#include "grl/rigidity/identities.hpp"
#include "report.hpp"

namespace grl::cli {

namespace {

using geometry::ParamSurface;
using radial::kHalfPi;

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// Closed-form anchored checks; each is cheap.
void quick_checks(Report& rep) {
  auto add = [&](const std::string& name, bool pass) { rep.check(name, pass, pass); };

  const auto ico0 = geometry::gen_icosphere(0, Vec3::Zero(), 1.0);
  add("icosahedronCounts", ico0.vertex_count() == 12 && ico0.face_count() == 20);
  const auto ico3 = geometry::gen_icosphere(3, Vec3(0, 0, 1), 1.0);
  add("icosphereLevel3Basepoint", ico3.vertex_count() == 642 && ico3.basepoint.has_value());

  const auto big = geometry::gen_icosphere(2, Vec3(0, 0, 2), 2.0);
  const auto small = geometry::rescale_to_area(big, 4.0 * geometry::total_area(big) / 16.0);
  add("rescaleHalves", near((small.vertices[5] - 0.5 * big.vertices[5]).norm(), 0.0, 1e-12));

  const auto vg = geometry::vertex_geometry(ico3);
  double defect = 0.0;
  for (double d : vg.angle_defect) defect += d;
  add("gaussBonnet", near(defect, kFourPi, 1e-9));
  add("starShapedSphere", geometry::star_shape_check(ico3).sign_consistent);

  const auto op = greensolve::assemble(ico3);
  const greensolve::Vector ones = greensolve::Vector::Ones(static_cast<Eigen::Index>(ico3.vertex_count()));
  greensolve::Vector s1;
  op.stiffness.multiply(ones, s1);
  add("stiffnessKernel", s1.cwiseAbs().maxCoeff() <= 1e-12);
  const auto g = greensolve::solve_green(op, ico3, *ico3.basepoint);
  add("greenMeanZero", std::abs(op.mass.dot(g.values)) <= 1e-9 * op.area());

  geometry::GeometrySample top{Vec3(0, 0, 2), Vec3(0, 0, 1), 2.0, 1.0, 0.5};
  geometry::GeometrySample side{Vec3(1, 0, 1), Vec3(1, 0, 0), 2.0, 1.0, 0.5};
  const auto s2 = rigidity::surface2_residual({top, side});
  add("surface2SpherePoints", s2.max_abs == 0.0);
  add("meanCurvatureEquality", rigidity::mean_curvature_rhs(0.5) == 2.0);
  const auto um = rigidity::umbilic_probe(ParamSurface::sphere(Vec3(0, 0, 1), 1.0), {0.1, 0.05});
  add("umbilicSphere", um.max_error <= 1e-10);
  Eigen::VectorXd y4(4);
  y4 << 0, 0, 0, 2;
  add("conformalNDPole", rigidity::conformal_nd_check(3, 1.0, {y4}).max_abs_gap <= 1e-15);

  const double t = kHalfPi / 2;
  add("odeExactJet", std::abs(radial::ode_residual(2 * std::sin(t), 2 * std::cos(t), -2 * std::sin(t), t).value) <= 1e-14);
  add("odeConstant", near(radial::ode_residual(1, 0, 0, t).value, 0.5, 1e-15));
  const auto st = radial::series_start(1e-3);
  add("seriesStart", st.u0 == 2 * std::sin(1e-3) && st.s0 == 2 * std::cos(1e-3));
  const auto lin = radial::linearized_coeffs(-2 * std::sin(t), 2 * std::cos(t), 2 * std::sin(t), t);
  add("operatorExactJet", lin.d_second == 1.0 && std::abs(lin.value) <= 1e-14);

  const auto zero = radial::HemisphereGrid::from_function(0.05, 32, 32, [](double, double) { return 0.0; });
  const auto res = radial::pde_residual(zero);
  double dev = 0.0;
  for (std::size_t k = 32; k < res.size(); ++k) dev = std::max(dev, std::abs(res[k] - 0.5));
  add("pdeZeroHalf", dev <= 1e-10);
  add("asymptoticsRejectZero", !radial::asymptotics_check(zero).pass);

  add("reflectRightAngle", (radial::reflect(Vec3(0, 0, 1), kHalfPi / 2) - Vec3(1, 0, 0)).norm() <= 1e-15);
  add("latitudeRatioFixed", near(radial::latitude_ratio(0.4, 0.4), 1.0, 1e-15));
  add("latitudeRatioCot", near(radial::latitude_ratio(kHalfPi / 4, kHalfPi / 2), 1.0 + std::sqrt(2.0), 1e-12));

  const auto fg = radial::field_gap(Vec2(0.3, 0.1), Vec2(0.3, 0.1), 1.0);
  add("fieldGapEqual", fg.lipschitz_ok && fg.monotone_ok && fg.lipschitz_lhs == 0.0);
  const auto sa = radial::build_selfadjoint(Vec2(1, 0), Vec2(1, 0), 1.0);
  add("selfAdjointEquality", near(sa.eigenvalues(0), 1.0, 1e-14) && near(sa.eigenvalues(1), 3.0, 1e-14));

  add("kelvinPoint", (kelvin::kelvin_point(Vec3(0, 0, 2)) - Vec3(0, 0, 0.5)).norm() == 0.0);
  const Vec3 u = Vec3(1, 2, 3).normalized();
  add("kelvinUnitFixed", (kelvin::kelvin_point(u) - u).norm() <= 1e-15);
  const auto sph = ParamSurface::sphere(Vec3(0, 0, 1), 1.0);
  add("conformalFactorPole", kelvin::conformal_factor_check(sph, {Vec3(0, 0, 2)}).samples[0].factor == 1.0 / 16.0);
  add("kelvinSpherePlane",
      kelvin::curvature_correspondence_residual(sph, kelvin::random_points(sph, 50, 3),
                                                kelvin::CurvatureMethod::ClosedForm)
          .max_abs_residual <= 1e-12);
}

// Heavier closed-form and exact-solution checks.
void full_checks(Report& rep) {
  const auto mesh = geometry::rescale_to_area(geometry::gen_icosphere(5, Vec3(0, 0, 1), 1.0));
  const auto op = greensolve::assemble(mesh);
  const auto fit = greensolve::fit_log_constant(greensolve::solve_green(op, mesh, *mesh.basepoint), mesh, op.mass);
  const double expected = (std::log(2.0) - 0.5) / (2.0 * kPi);
  rep.check("greenConstantLevel5", std::abs(fit.c - expected) <= 2e-2, fit.c, expected);

  const auto probe = radial::uniqueness_probe(0.0);
  rep.check("shootExact", probe.pole_defect <= 1e-6 && probe.sup_error <= 1e-6, probe.pole_defect, 1e-6);

  const auto shot = radial::shoot(1e-3, 2 * std::sin(1e-3), 2 * std::cos(1e-3), 1e-4);
  double min_w = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 9; ++k) min_w = std::min(min_w, radial::moving_plane_report(shot.profile, k * kHalfPi / 10).min_w);
  rep.check("movingPlaneExact", min_w >= -radial::kOmegaTolerance, min_w, -radial::kOmegaTolerance);

  const auto sph = ParamSurface::sphere(Vec3(0, 0, 1), 1.0);
  const auto corr = kelvin::curvature_correspondence_residual(sph, kelvin::random_points(sph, 500, 1),
                                                              kelvin::CurvatureMethod::FiniteDifference);
  rep.check("kelvinSphereFiniteDifference", corr.max_abs_residual <= 1e-8, corr.max_abs_residual, 1e-8);
}

}  // namespace

void add_suite(CLI::App& app, Common& common, Runner& runner) {
  auto* sub = app.add_subcommand("suite", "aggregate self-checks");
  auto quick = std::make_shared<bool>(false);
  sub->add_flag("--quick", *quick, "closed-form anchored checks only");
  sub->callback([&runner, &common, quick] {
    (void)common;
    runner = [quick](Report& rep) {
      rep.command = "suite";
      rep.params = {{"quick", *quick}};
      quick_checks(rep);
      if (!*quick) full_checks(rep);
      rep.result["checkCount"] = rep.checks.size();
      std::size_t passed = 0;
      for (const auto& c : rep.checks) passed += c.pass;
      rep.result["passed"] = passed;
    };
  });
}

}  // namespace grl::cli
