#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <random>
#include <sstream>

#include "grl/error.hpp"
#include "grl/io/radial_io.hpp"
#include "grl/radial/asymptotics.hpp"
#include "grl/radial/hemisphere.hpp"
#include "grl/radial/lemmas.hpp"
#include "grl/radial/moving_plane.hpp"
#include "grl/radial/ode.hpp"
#include "report.hpp"

namespace grl::cli {

using namespace grl::radial;

namespace {

double exact_rho(double theta, double) { return std::log(2.0 * std::sin(theta)); }

// Tilted sphere through the origin, axis c = (sin t, 0, cos t).
std::function<double(double, double)> tilted_rho(double tilt) {
  return [tilt](double th, double ph) {
    return std::log(2.0 * (std::sin(tilt) * std::cos(th) * std::cos(ph) + std::cos(tilt) * std::sin(th)));
  };
}

// The taper keeps the perturbation smooth at the pole.
std::function<double(double, double)> bumped_rho(double amplitude, double collar) {
  return [amplitude, collar](double th, double ph) {
    const double c = std::cos(th);
    return exact_rho(th, ph) + amplitude * std::sin(3.0 * ph) * std::sin(th - collar) * c * c * c;
  };
}

double max_error_vs_exact(const HemisphereGrid& g) {
  double m = 0.0;
  for (int i = 0; i < g.n_theta; ++i)
    for (int j = 0; j < g.n_phi; ++j) m = std::max(m, std::abs(g.at(i, j) - exact_rho(g.theta(i), 0.0)));
  return m;
}

ordered_json asymptotics_json(const AsymptoticsReport& a) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : a.rows)
    rows.push_back({{"theta", r.theta},
                    {"ratio1Min", r.ratio1_min},
                    {"ratio1Max", r.ratio1_max},
                    {"ratio2Max", r.ratio2_max},
                    {"rawMax", r.raw_max}});
  return {{"epsilon", a.epsilon},
          {"rows", rows},
          {"ratio1Deviation", a.ratio1_deviation},
          {"ratio2Max", a.ratio2_max},
          {"rawMax", a.raw_max},
          {"pass", a.pass}};
}

ordered_json reflection_json(const ReflectionReport& r) {
  return {{"thetaPlane", r.theta_plane},
          {"minW", num_json(r.min_w)},
          {"sigma", r.sigma},
          {"minWSigma", num_json(r.min_w_sigma)},
          {"omegaEmpty", r.omega_empty},
          {"omegaCount", r.omega_count},
          {"checked", r.checked},
          {"skipped", r.skipped}};
}

RadialProfile exact_profile(int nodes, double theta0) {
  RadialProfile p;
  for (int k = 0; k < nodes; ++k) {
    const double th = k + 1 == nodes ? kHalfPi : theta0 + (kHalfPi - theta0) * k / (nodes - 1);
    p.thetas.push_back(th);
    p.u.push_back(2.0 * std::sin(th));
    p.du.push_back(2.0 * std::cos(th));
  }
  return p;
}

std::string profile_csv(const RadialProfile& p) {
  std::ostringstream os;
  io::write_profile_csv(p, os);
  return os.str();
}

std::string grid_csv(const HemisphereGrid& g) {
  std::ostringstream os;
  io::write_grid_csv(g, os);
  return os.str();
}

}  // namespace

void add_ode(CLI::App& app, Common& common, Runner& runner) {
  auto* ode = app.add_subcommand("ode", "latitude ODE: shooting, residual, linearization");
  ode->require_subcommand(1);
  (void)common;

  struct Shoot {
    double beta = 0.0, theta0 = 1e-3, step = 1e-4;
    bool halving = false;
  };
  auto s = std::make_shared<Shoot>();
  auto* shoot_cmd = ode->add_subcommand("shoot", "shoot from the perturbed exact jet and measure the pole defect");
  shoot_cmd->add_option("--beta", s->beta, "second-order perturbation of u(theta0)");
  shoot_cmd->add_option("--theta0", s->theta0, "start latitude");
  shoot_cmd->add_option("--step", s->step, "RK4 step");
  shoot_cmd->add_flag("--halving", s->halving, "repeat at half the step and require the defect to agree to 1%");
  shoot_cmd->callback([&runner, s] {
    runner = [s](Report& rep) {
      rep.command = "ode shoot";
      rep.params = {{"beta", s->beta}, {"theta0", s->theta0}, {"step", s->step}, {"halving", s->halving}};
      const auto probe = uniqueness_probe(s->beta, s->theta0, s->step);
      const double u0 = 2.0 * std::sin(s->theta0) + s->beta * s->theta0 * s->theta0;
      const auto shot = shoot(s->theta0, u0, 2.0 * std::cos(s->theta0), s->step);
      rep.result["poleDefect"] = num_json(probe.pole_defect);
      rep.result["poleValue"] = num_json(probe.pole_value);
      rep.result["abortAngle"] = probe.abort_angle ? ordered_json(*probe.abort_angle) : ordered_json(nullptr);
      if (shot.aborted) rep.result["abortReason"] = shot.abort_reason;
      rep.result["supError"] = probe.sup_error;
      rep.result["singularCoefficient"] = num_json(probe.singular_coefficient);
      rep.result["nodes"] = shot.profile.thetas.size();
      if (shot.profile.thetas.size() >= 3) rep.result["asymptotics"] = asymptotics_json(asymptotics_check(shot.profile));

      if (s->beta == 0.0) {
        rep.check("poleDefect", probe.pole_defect <= 1e-6, num_json(probe.pole_defect), 1e-6);
        rep.check("supError", probe.sup_error <= 1e-6, probe.sup_error, 1e-6);
      } else {
        const bool signal = probe.abort_angle.has_value() || probe.pole_defect > 1e-6;
        rep.check("defectOrBlowUp", signal, num_json(probe.pole_defect), 1e-6);
      }
      if (s->halving) {
        const auto half = uniqueness_probe(s->beta, s->theta0, 0.5 * s->step);
        double rel = std::numeric_limits<double>::infinity();
        if (std::isinf(probe.pole_defect) && std::isinf(half.pole_defect)) {
          rel = 0.0;
        } else if (std::isfinite(probe.pole_defect) && std::isfinite(half.pole_defect) && half.pole_defect > 0.0) {
          rel = std::abs(probe.pole_defect - half.pole_defect) / half.pole_defect;
        }
        rep.result["halfStepPoleDefect"] = num_json(half.pole_defect);
        rep.result["halfStepSingularCoefficient"] = num_json(half.singular_coefficient);
        if (s->beta != 0.0) rep.check("stepHalvingStable", rel <= 0.01, num_json(rel), 0.01);
      }
      rep.csv = profile_csv(shot.profile);
    };
  });

  auto r = std::make_shared<std::array<double, 4>>(std::array<double, 4>{0.0, 0.0, 0.0, 0.0});
  auto* res_cmd = ode->add_subcommand("residual", "ODE left-hand side at a jet");
  res_cmd->add_option("--u", (*r)[0])->required();
  res_cmd->add_option("--du", (*r)[1])->required();
  res_cmd->add_option("--ddu", (*r)[2])->required();
  res_cmd->add_option("--theta", (*r)[3])->required();
  res_cmd->callback([&runner, r] {
    runner = [r](Report& rep) {
      const auto [u, du, ddu, th] = *r;
      rep.command = "ode residual";
      rep.params = {{"u", u}, {"du", du}, {"ddu", ddu}, {"theta", th}};
      const auto v = ode_residual(u, du, ddu, th);
      rep.result = {{"value", v.value}, {"regularized", v.regularized}};
    };
  });

  auto l = std::make_shared<std::array<double, 4>>(std::array<double, 4>{0.0, 0.0, 1.0, 0.5});
  auto* lin_cmd = ode->add_subcommand("linearize", "operator F and its partial derivatives");
  lin_cmd->add_option("--M", (*l)[0], "u''");
  lin_cmd->add_option("--P", (*l)[1], "u'");
  lin_cmd->add_option("--Z", (*l)[2], "u");
  lin_cmd->add_option("--theta", (*l)[3]);
  lin_cmd->callback([&runner, l] {
    runner = [l](Report& rep) {
      const auto [m, p, z, th] = *l;
      rep.command = "ode linearize";
      rep.params = {{"M", m}, {"P", p}, {"Z", z}, {"theta", th}};
      const auto lin = linearized_coeffs(m, p, z, th);
      const double h = 1e-6;
      const double fp = (operator_value(m, p + h, z, th) - operator_value(m, p - h, z, th)) / (2 * h);
      const double fz = (operator_value(m, p, z + h, th) - operator_value(m, p, z - h, th)) / (2 * h);
      auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
      const double worst = std::max(rel(lin.d_slope, fp), rel(lin.d_value, fz));
      rep.result = {{"value", lin.value}, {"dM", lin.d_second}, {"dP", lin.d_slope}, {"dZ", lin.d_value},
                    {"finiteDifferenceGap", worst}};
      rep.check("matchesFiniteDifferences", worst <= 1e-6, worst, 1e-6);
    };
  });

  auto t0 = std::make_shared<double>(1e-3);
  auto* series_cmd = ode->add_subcommand("series", "exact-solution jet at theta0");
  series_cmd->add_option("--theta0", *t0);
  series_cmd->callback([&runner, t0] {
    runner = [t0](Report& rep) {
      rep.command = "ode series";
      rep.params = {{"theta0", *t0}};
      const auto st = series_start(*t0);
      rep.result = {{"u0", st.u0}, {"s0", st.s0}};
    };
  });
}

void add_pde(CLI::App& app, Common& common, Runner& runner) {
  auto* pde = app.add_subcommand("pde", "hemisphere PDE: residual, Newton solve, structural lemmas");
  pde->require_subcommand(1);

  struct Res {
    int n = 128;
    double collar = 0.05;
    std::string solution = "exact";
    double tilt = 0.3;
    bool order = false;
    double cap = 0.25;
    std::string grid_in;
  };
  auto r = std::make_shared<Res>();
  auto* res = pde->add_subcommand("residual", "discrete residual of a grid function");
  res->add_option("--n", r->n, "rows and columns")->check(CLI::Range(4, 4096));
  res->add_option("--collar", r->collar, "collar latitude");
  res->add_option("--solution", r->solution, "exact, zero or tilt")->check(CLI::IsMember({"exact", "zero", "tilt"}));
  res->add_option("--tilt", r->tilt, "axis tilt for --solution tilt");
  res->add_flag("--order", r->order, "also evaluate at 2n and check the h^2 ratio");
  res->add_option("--cap", r->cap, "polar cap excluded from the tilted order check (radians)");
  res->add_option("--grid-in", r->grid_in, "evaluate a grid JSON file instead");
  res->callback([&runner, r] {
    runner = [r](Report& rep) {
      rep.command = "pde residual";
      if (!r->grid_in.empty()) {
        rep.params = {{"gridIn", r->grid_in}};
        const auto g = io::load_grid_json(r->grid_in);
        const auto f = pde_residual(g);
        rep.result["maxResidual"] = max_interior_abs(g, f);
        rep.result["asymptotics"] = asymptotics_json(asymptotics_check(g));
        rep.csv = grid_csv(g);
        return;
      }
      rep.params = {{"n", r->n}, {"collar", r->collar}, {"solution", r->solution}};
      std::function<double(double, double)> f = exact_rho;
      if (r->solution == "zero") f = [](double, double) { return 0.0; };
      if (r->solution == "tilt") {
        rep.params["tilt"] = r->tilt;
        rep.params["cap"] = r->cap;
        f = tilted_rho(r->tilt);
      }
      auto measure = [&](int n) {
        const auto g = HemisphereGrid::from_function(r->collar, n, n, f);
        const auto res = pde_residual(g);
        return std::make_tuple(g, max_interior_abs(g, res), max_abs_up_to(g, res, kHalfPi - r->cap));
      };
      const auto [g, full, away] = measure(r->n);
      rep.result["maxResidual"] = full;
      if (r->solution == "tilt") rep.result["maxResidualOutsideCap"] = away;
      rep.result["asymptotics"] = asymptotics_json(asymptotics_check(g));
      if (r->solution == "zero") {
        const auto res = pde_residual(g);
        double dev = 0.0;
        for (std::size_t k = static_cast<std::size_t>(g.n_phi); k < res.size(); ++k) dev = std::max(dev, std::abs(res[k] - 0.5));
        rep.check("constantHalf", dev <= 1e-10, dev, 1e-10);
      }
      if (r->order && r->solution != "zero") {
        const auto [g2, full2, away2] = measure(2 * r->n);
        (void)g2;
        const double ratio = r->solution == "tilt" ? away / away2 : full / full2;
        rep.result["fine"] = {{"n", 2 * r->n}, {"maxResidual", full2}, {"fullRatio", full / full2}};
        if (r->solution == "tilt") rep.result["fine"]["maxResidualOutsideCap"] = away2;
        rep.result["ratio"] = ratio;
        rep.check("secondOrder", ratio >= 3.5 && ratio <= 4.5, ratio, ordered_json::array({3.5, 4.5}));
      }
      rep.csv = grid_csv(g);
    };
  });

  struct Solve {
    int n = 128;
    double collar = 0.05;
    double bump = 0.2;
    double tol = 1e-10;
    double fine_tol = 1e-9;
    int max_iter = 20;
    bool order = false;
    std::string grid_in, grid_out;
  };
  auto s = std::make_shared<Solve>();
  auto* sol = pde->add_subcommand("solve", "damped Newton with exact collar data");
  sol->add_option("--n", s->n, "rows and columns")->check(CLI::Range(8, 2048));
  sol->add_option("--collar", s->collar, "collar latitude");
  sol->add_option("--bump", s->bump, "amplitude of the sin(3 phi) start perturbation");
  sol->add_option("--tol", s->tol, "max-norm residual tolerance");
  sol->add_option("--fine-tol", s->fine_tol, "tolerance of the 2n solve for --order");
  sol->add_option("--max-iter", s->max_iter, "Newton iteration cap");
  sol->add_flag("--order", s->order, "solve from the exact start at n and 2n and check the error ratio");
  sol->add_option("--grid-in", s->grid_in, "start from this grid JSON");
  sol->add_option("--grid-out", s->grid_out, "write the solution as grid JSON");
  sol->callback([&runner, s] {
    runner = [s](Report& rep) {
      rep.command = "pde solve";
      rep.params = {{"n", s->n}, {"collar", s->collar}, {"bump", s->bump}, {"tol", s->tol}, {"maxIter", s->max_iter}};
      HemisphereGrid init;
      if (!s->grid_in.empty()) {
        rep.params["gridIn"] = s->grid_in;
        init = io::load_grid_json(s->grid_in);
      } else {
        init = HemisphereGrid::from_function(s->collar, s->n, s->n, bumped_rho(s->bump, s->collar));
      }
      std::vector<double> dirichlet(static_cast<std::size_t>(init.n_phi), exact_rho(init.theta_collar, 0.0));
      NewtonOptions opts;
      opts.tol = s->tol;
      opts.max_iterations = s->max_iter;
      try {
        const auto out = newton_solve(init, dirichlet, opts);
        rep.result["converged"] = true;
        rep.result["iterations"] = out.iterations;
        rep.result["residual"] = out.residual;
        rep.result["history"] = out.history;
        rep.result["maxErrorVsExact"] = max_error_vs_exact(out.grid);
        const auto asym = asymptotics_check(out.grid);
        rep.result["asymptotics"] = asymptotics_json(asym);
        rep.check("converged", true, out.residual, s->tol);
        if (!s->grid_out.empty()) io::save_grid_json(out.grid, s->grid_out);
        rep.csv = grid_csv(out.grid);
      } catch (const SolverError& e) {
        rep.result["converged"] = false;
        rep.result["iterations"] = e.iterations();
        rep.result["residual"] = e.residual();
        rep.result["message"] = e.what();
        rep.check("converged", false, e.residual(), s->tol);
      }
      if (s->order) {
        auto solve_exact = [&](int n, double tol) {
          const auto g = HemisphereGrid::from_function(s->collar, n, n, exact_rho);
          NewtonOptions o;
          o.tol = tol;
          o.max_iterations = s->max_iter;
          std::vector<double> d(static_cast<std::size_t>(n), exact_rho(s->collar, 0.0));
          return max_error_vs_exact(newton_solve(g, d, o).grid);
        };
        const double coarse = solve_exact(s->n, s->tol);
        const double fine = solve_exact(2 * s->n, s->fine_tol);
        const double ratio = coarse / fine;
        rep.result["order"] = {{"coarseError", coarse}, {"fineError", fine}, {"ratio", ratio},
                               {"observedOrder", std::log2(ratio)}};
        rep.check("errorContraction", ratio >= 3.5 && ratio <= 4.5, ratio, ordered_json::array({3.5, 4.5}));
      }
    };
  });

  struct Lem {
    std::size_t samples = 100000;
    std::vector<double> bounds{1.0, 10.0};
    double lambda_max = 5.0;
  };
  auto le = std::make_shared<Lem>();
  auto* lem = pde->add_subcommand("lemmas", "random sweeps of the ellipticity and self-adjoint tensor lemmas");
  lem->add_option("--samples", le->samples, "samples per sweep");
  lem->add_option("--bounds", le->bounds, "gradient bounds M")->delimiter(',');
  lem->add_option("--lambda-max", le->lambda_max, "upper end of the lambda range")->check(CLI::Range(1.0, 1e3));
  lem->callback([&runner, &common, le] {
    runner = [le, &common](Report& rep) {
      rep.command = "pde lemmas";
      rep.params = {{"samples", le->samples}, {"bounds", le->bounds}, {"lambdaMax", le->lambda_max}, {"seed", common.seed}};
      std::mt19937_64 rng(common.seed);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      auto disk = [&](double radius) {
        const double r = radius * std::sqrt(unit(rng));
        const double a = 2.0 * kPi * unit(rng);
        return Vec2(r * std::cos(a), r * std::sin(a));
      };
      ordered_json sweeps = ordered_json::array();
      bool all = true;
      for (double m : le->bounds) {
        std::size_t lip = 0, mono = 0;
        for (std::size_t k = 0; k < le->samples; ++k) {
          const auto g = field_gap(disk(m), disk(m), m);
          lip += g.lipschitz_ok;
          mono += g.monotone_ok;
        }
        sweeps.push_back({{"M", m}, {"lambda", ellipticity_constant(m)}, {"lipschitzHeld", lip}, {"monotoneHeld", mono}});
        all = all && lip == le->samples && mono == le->samples;
      }
      rep.result["fieldGap"] = sweeps;
      rep.check("fieldGap", all, all);

      std::size_t held = 0;
      double worst_low = std::numeric_limits<double>::infinity(), worst_high = 0.0;
      for (std::size_t k = 0; k < le->samples; ++k) {
        const double lambda = 1.0 + (le->lambda_max - 1.0) * unit(rng);
        const Vec2 a = disk(10.0);
        if (a.norm() == 0.0) continue;
        const double r = 1.0 / lambda + (lambda - 1.0 / lambda) * unit(rng);
        const double wmax = std::acos(std::min(1.0, 1.0 / (lambda * r)));
        const double w = wmax * (2.0 * unit(rng) - 1.0);
        const Vec2 e1 = a.normalized();
        const Vec2 e2(-e1.y(), e1.x());
        const Vec2 b = a.norm() * r * (std::cos(w) * e1 + std::sin(w) * e2);
        const auto t = build_selfadjoint(a, b, lambda);
        held += t.within_bounds;
        worst_low = std::min(worst_low, t.eigenvalues(0) / t.lower);
        worst_high = std::max(worst_high, t.eigenvalues(1) / t.upper);
      }
      rep.result["selfAdjoint"] = {{"samples", le->samples}, {"withinBounds", held},
                                   {"minLowerRatio", num_json(worst_low)}, {"maxUpperRatio", worst_high}};
      rep.check("selfAdjointBounds", held == le->samples, held, le->samples);
    };
  });
}

void add_moving_plane(CLI::App& app, Common& common, Runner& runner) {
  auto* mp = app.add_subcommand("moving-plane", "reflection comparison across rotating great circles");
  mp->require_subcommand(1);
  (void)common;

  struct Sweep {
    std::string source = "exact";
    int planes = 9;
    std::vector<double> theta_planes;
    double sigma = 0.0;
    int n_phi = 64;
    int nodes = 1000;
    int n = 128;
    std::string file;
  };
  auto s = std::make_shared<Sweep>();
  auto* sweep = mp->add_subcommand("sweep", "minimum of w over the reflected cap");
  sweep->add_option("--source", s->source, "exact, shoot, exact-grid, profile or grid")
      ->check(CLI::IsMember({"exact", "shoot", "exact-grid", "profile", "grid"}));
  sweep->add_option("--file", s->file, "profile CSV or grid JSON for --source profile|grid");
  sweep->add_option("--planes", s->planes, "plane angles k pi / (2 (planes + 1))")->check(CLI::Range(1, 1000));
  sweep->add_option("--theta-plane", s->theta_planes, "explicit plane angles")->delimiter(',');
  sweep->add_option("--sigma", s->sigma, "shift for the w_sigma variant");
  sweep->add_option("--n-phi", s->n_phi, "azimuths per profile node");
  sweep->add_option("--nodes", s->nodes, "nodes of the exact profile")->check(CLI::Range(3, 1000000));
  sweep->add_option("--n", s->n, "grid size for --source exact-grid")->check(CLI::Range(4, 4096));
  sweep->callback([&runner, s] {
    runner = [s](Report& rep) {
      rep.command = "moving-plane sweep";
      rep.params = {{"source", s->source}, {"sigma", s->sigma}};
      std::vector<double> angles = s->theta_planes;
      if (angles.empty())
        for (int k = 1; k <= s->planes; ++k) angles.push_back(k * kHalfPi / (s->planes + 1));
      rep.params["thetaPlanes"] = angles;

      std::optional<RadialProfile> profile;
      std::optional<HemisphereGrid> grid;
      if (s->source == "exact") {
        profile = exact_profile(s->nodes, 1e-3);
      } else if (s->source == "shoot") {
        profile = shoot(1e-3, 2.0 * std::sin(1e-3), 2.0 * std::cos(1e-3), 1e-4).profile;
      } else if (s->source == "exact-grid") {
        grid = HemisphereGrid::from_function(0.05, s->n, s->n, exact_rho);
      } else if (s->source == "profile") {
        std::ifstream in(s->file);
        if (!in) throw Error(ErrorKind::Io, "cannot read " + s->file);
        profile = io::read_profile_csv(in);
      } else {
        grid = io::load_grid_json(s->file);
      }

      ordered_json rows = ordered_json::array();
      double min_w = std::numeric_limits<double>::infinity();
      bool omega_empty = true;
      std::ostringstream csv;
      csv << "thetaPlane,minW,minWSigma,checked,skipped\n";
      for (double tp : angles) {
        const auto r = profile ? moving_plane_report(*profile, tp, s->sigma, s->n_phi)
                               : moving_plane_report(*grid, tp, s->sigma);
        rows.push_back(reflection_json(r));
        min_w = std::min(min_w, r.min_w);
        omega_empty = omega_empty && r.omega_empty;
        csv << csv_num(tp) << ',' << csv_num(r.min_w) << ',' << csv_num(r.min_w_sigma) << ',' << r.checked << ','
            << r.skipped << '\n';
      }
      rep.result["reports"] = rows;
      rep.result["minW"] = num_json(min_w);
      rep.check("wNonnegative", min_w >= -kOmegaTolerance, num_json(min_w), -kOmegaTolerance);
      if (s->sigma > 0.0) rep.check("omegaEmpty", omega_empty, omega_empty);
      rep.csv = csv.str();
    };
  });

  struct Refl {
    std::vector<double> x;
    double theta_plane = kHalfPi / 2;
  };
  auto rf = std::make_shared<Refl>();
  auto* refl = mp->add_subcommand("reflect", "reflect a unit vector");
  refl->add_option("--x", rf->x, "unit vector x,y,z")->delimiter(',')->expected(3)->required();
  refl->add_option("--theta-plane", rf->theta_plane);
  refl->callback([&runner, rf] {
    runner = [rf](Report& rep) {
      rep.command = "moving-plane reflect";
      const Vec3 x(rf->x[0], rf->x[1], rf->x[2]);
      rep.params = {{"x", vec_json(x)}, {"thetaPlane", rf->theta_plane}};
      const Vec3 y = reflect(x, rf->theta_plane);
      const double inv = (reflect(y, rf->theta_plane) - x).norm();
      rep.result = {{"reflected", vec_json(y)}, {"involutionError", inv}, {"normError", std::abs(y.norm() - 1.0)}};
      rep.check("involution", inv <= 1e-14, inv, 1e-14);
    };
  });

  auto ag = std::make_shared<std::pair<double, double>>(kHalfPi / 4, kHalfPi / 2);
  auto* ratio = mp->add_subcommand("ratio", "latitude ratio against the reflect-based value");
  ratio->add_option("--alpha", ag->first);
  ratio->add_option("--gamma", ag->second);
  ratio->callback([&runner, ag] {
    runner = [ag](Report& rep) {
      const auto [alpha, gamma] = *ag;
      rep.command = "moving-plane ratio";
      rep.params = {{"alpha", alpha}, {"gamma", gamma}};
      const double formula = latitude_ratio(alpha, gamma);
      const Vec3 x(std::cos(alpha), 0.0, std::sin(alpha));
      const double direct = reflect(x, gamma).z() / x.z();
      rep.result = {{"ratio", formula}, {"reflectRatio", direct}};
      rep.check("matchesReflect", std::abs(formula - direct) <= 1e-12, std::abs(formula - direct), 1e-12);
    };
  });
}

}  // namespace grl::cli
