#include <cmath>
#include <memory>
#include <random>
#include <sstream>

#include "grl/error.hpp"
#include "grl/geometry/generators.hpp"
#include "grl/geometry/measure.hpp"
#include "grl/geometry/mesh_io.hpp"
#include "grl/greensolve/green.hpp"
#include "grl/greensolve/laplace.hpp"
#include "grl/rigidity/identities.hpp"
#include "report.hpp"

namespace grl::cli {

using geometry::TriMesh;

namespace {

TriMesh build_mesh(const SurfaceOptions& so, int level) {
  if (!so.mesh.empty()) return geometry::load_mesh(so.mesh);
  TriMesh m = geometry::mesh_surface(so.surface(), level);
  return so.no_normalize ? m : geometry::rescale_to_area(m);
}

bool inline_sphere(const SurfaceOptions& so) { return so.mesh.empty() && so.shape == "sphere"; }

}  // namespace

void add_mesh(CLI::App& app, Common& common, Runner& runner) {
  auto* sub = app.add_subcommand("mesh", "build or load a mesh and measure its discrete geometry");
  auto so = std::make_shared<SurfaceOptions>();
  auto level = std::make_shared<int>(4);
  auto save = std::make_shared<std::string>();
  so->add(*sub, true);
  sub->add_option("--level", *level, "icosphere subdivision level")->check(CLI::Range(0, geometry::kMaxSubdivisionLevel));
  sub->add_option("--save", *save, "write the mesh as OFF");
  sub->callback([&runner, &common, so, level, save] {
    (void)common;
    runner = [so, level, save](Report& rep) {
      rep.command = "mesh";
      rep.params["surface"] = so->describe();
      rep.params["level"] = *level;
      const TriMesh mesh = build_mesh(*so, *level);
      geometry::validate(mesh);
      if (!save->empty()) geometry::save_off(mesh, *save);
      const auto vg = geometry::vertex_geometry(mesh);

      double defect = 0.0;
      for (double d : vg.angle_defect) defect += d;
      rep.result["vertexCount"] = mesh.vertex_count();
      rep.result["faceCount"] = mesh.face_count();
      rep.result["area"] = geometry::total_area(mesh);
      rep.result["basepoint"] = mesh.basepoint ? ordered_json(*mesh.basepoint) : ordered_json(nullptr);
      rep.result["connected"] = geometry::is_connected(mesh);
      rep.result["totalAngleDefect"] = defect;
      rep.check("gaussBonnet", std::abs(defect - kFourPi) <= 1e-9, std::abs(defect - kFourPi), 1e-9);

      if (inline_sphere(*so)) {
        const double r = std::sqrt(geometry::total_area(mesh) / kFourPi);
        double eh = 0.0, ek = 0.0;
        for (const auto& s : vg.samples) {
          eh = std::max(eh, std::abs(s.mean_curvature - 2.0 / r));
          ek = std::max(ek, std::abs(s.gauss_curvature - 1.0 / (r * r)));
        }
        rep.result["maxAbsMeanCurvatureError"] = eh;
        rep.result["maxAbsGaussCurvatureError"] = ek;
      }
      if (mesh.basepoint) {
        const auto star = geometry::star_shape_check(mesh);
        rep.result["starShape"] = {{"minSupport", star.min_support},
                                   {"maxSupport", star.max_support},
                                   {"minSupportQuotient", star.min_support_quotient},
                                   {"signConsistent", star.sign_consistent},
                                   {"checked", star.checked},
                                   {"excluded", star.excluded}};
        rep.check("starShaped", star.sign_consistent, star.min_support, 0.0);
      }

      std::ostringstream csv;
      csv << "vertex,x,y,z,H,K,q\n";
      for (std::size_t i = 0; i < vg.samples.size(); ++i) {
        const auto& s = vg.samples[i];
        csv << i << ',' << csv_num(s.point.x()) << ',' << csv_num(s.point.y()) << ',' << csv_num(s.point.z()) << ','
            << csv_num(s.mean_curvature) << ',' << csv_num(s.gauss_curvature) << ','
            << (s.support_quotient ? csv_num(*s.support_quotient) : "") << '\n';
      }
      rep.csv = csv.str();
    };
  });
}

void add_green(CLI::App& app, Common& common, Runner& runner) {
  auto* sub = app.add_subcommand("green", "discrete Green function and logarithmic fit");
  struct Opts {
    SurfaceOptions so;
    int level = 5;
    double exclude = greensolve::kDefaultExclusionRadius;
    double tol = 1e-10;
  };
  auto o = std::make_shared<Opts>();
  o->so.add(*sub, true);
  sub->add_option("--level", o->level, "icosphere subdivision level")->check(CLI::Range(0, geometry::kMaxSubdivisionLevel));
  sub->add_option("--exclude", o->exclude, "chordal exclusion radius around the source");
  sub->add_option("--tol", o->tol, "relative residual tolerance of the linear solve");
  sub->callback([&runner, &common, o] {
    (void)common;
    runner = [o](Report& rep) {
      rep.command = "green";
      rep.params["surface"] = o->so.describe();
      rep.params["level"] = o->level;
      rep.params["exclude"] = o->exclude;
      rep.params["tol"] = o->tol;
      const TriMesh mesh = build_mesh(o->so, o->level);
      geometry::validate(mesh);
      if (!mesh.basepoint) throw Error(ErrorKind::Configuration, "mesh has no basepoint at the origin");
      const auto op = greensolve::assemble(mesh);
      greensolve::GreenOptions gopts;
      gopts.relative_tolerance = o->tol;
      const auto field = greensolve::solve_green(op, mesh, *mesh.basepoint, gopts);
      const auto fit = greensolve::fit_log_constant(field, mesh, op.mass, o->exclude);

      rep.result["c"] = fit.c;
      rep.result["maxResidual"] = fit.max_residual;
      rep.result["rmsResidual"] = fit.rms_residual;
      rep.result["excludedCount"] = fit.excluded_count;
      rep.result["vertexCount"] = fit.vertex_count;
      rep.result["area"] = fit.area;
      rep.result["iterations"] = field.iterations;
      rep.result["relativeResidual"] = field.relative_residual;
      rep.check("solverTolerance", field.relative_residual <= o->tol, field.relative_residual, o->tol);
      if (inline_sphere(o->so) && !o->so.no_normalize) {
        const double expected = (std::log(2.0) - 0.5) / (2.0 * kPi);
        rep.result["expectedC"] = expected;
        rep.check("sphereConstant", std::abs(fit.c - expected) <= 2e-2, std::abs(fit.c - expected), 2e-2);
      }

      std::ostringstream csv;
      csv << "vertex,distance,G,residual\n";
      const Vec3& p = mesh.vertices[*mesh.basepoint];
      for (std::size_t i = 0; i < mesh.vertex_count(); ++i) {
        const double d = (mesh.vertices[i] - p).norm();
        const double g = field.values[static_cast<Eigen::Index>(i)];
        csv << i << ',' << csv_num(d) << ',' << csv_num(g) << ','
            << (d > o->exclude ? csv_num(g + std::log(d) / (2.0 * kPi) - fit.c) : "") << '\n';
      }
      rep.csv = csv.str();
    };
  });
}

void add_rigidity(CLI::App& app, Common& common, Runner& runner) {
  auto* sub = app.add_subcommand("rigidity", "pointwise rigidity identities, umbilic limit, n-dimensional check");
  struct Opts {
    SurfaceOptions so;
    std::string path = "closed-form";
    int nu = 64, nv = 64, level = 4;
    double tol = 1e-12;
    std::vector<double> radii{0.1, 0.05, 0.025};
    std::vector<int> dims{3, 4, 5};
    std::vector<double> nd_radii{0.5, 1.0, 2.0};
    std::size_t nd_samples = 100;
    std::size_t quotients = 100000;
  };
  auto o = std::make_shared<Opts>();
  o->so.add(*sub, true);
  sub->add_option("--path", o->path, "closed-form or mesh")->check(CLI::IsMember({"closed-form", "mesh"}));
  sub->add_option("--nu", o->nu, "polar parameter samples")->check(CLI::PositiveNumber);
  sub->add_option("--nv", o->nv, "azimuthal parameter samples")->check(CLI::PositiveNumber);
  sub->add_option("--level", o->level, "mesh level for --path mesh")->check(CLI::Range(0, geometry::kMaxSubdivisionLevel));
  sub->add_option("--tol", o->tol, "closed-form identity tolerance");
  sub->add_option("--radii", o->radii, "umbilic probe radii, decreasing")->delimiter(',');
  sub->add_option("--dims", o->dims, "hypersphere dimensions n")->delimiter(',');
  sub->add_option("--nd-radii", o->nd_radii, "hypersphere radii")->delimiter(',');
  sub->add_option("--nd-samples", o->nd_samples, "samples per (n, r)");
  sub->add_option("--quotients", o->quotients, "random positive quotients for the H >= 2 bound");
  sub->callback([&runner, &common, o] {
    runner = [o, &common](Report& rep) {
      rep.command = "rigidity";
      rep.params["surface"] = o->so.describe();
      rep.params["path"] = o->path;
      rep.params["seed"] = common.seed;
      const bool mesh_path = o->path == "mesh";
      if (!mesh_path && !o->so.mesh.empty())
        throw Error(ErrorKind::Configuration, "--mesh requires --path mesh");

      std::vector<geometry::GeometrySample> samples;
      if (mesh_path) {
        rep.params["level"] = o->level;
        const TriMesh mesh = build_mesh(o->so, o->level);
        geometry::validate(mesh);
        samples = geometry::vertex_geometry(mesh).samples;
      } else {
        rep.params["nu"] = o->nu;
        rep.params["nv"] = o->nv;
        const auto surf = o->so.surface();
        samples = geometry::sample_surface(surf, surf.sample_grid(o->nu, o->nv));
      }
      const auto s2 = rigidity::surface2_residual(samples);
      const auto mc = rigidity::mean_curvature_identity(samples, o->tol);
      rep.result["samplePath"] = rigidity::to_string(mesh_path ? rigidity::SamplePath::Mesh : rigidity::SamplePath::ClosedForm);
      rep.result["surface2"] = {{"samples", samples.size()},
                                {"excluded", s2.excluded},
                                {"flagged", s2.flagged.size()},
                                {"maxResidual", s2.max_abs},
                                {"rmsResidual", s2.rms}};
      rep.result["meanCurvature"] = {{"maxAbsGap", mc.max_abs_gap},
                                     {"minRhs", num_json(mc.min_rhs)},
                                     {"singular", mc.singular},
                                     {"allGeq2", mc.all_geq2}};
      if (!mesh_path) {
        // Mesh residuals carry discretization error and are only reported.
        rep.check("surface2Identity", s2.max_abs <= o->tol && s2.flagged.empty(), s2.max_abs, o->tol);
        rep.check("meanCurvatureIdentity", mc.max_abs_gap <= o->tol && mc.singular == 0, mc.max_abs_gap, o->tol);
      }

      std::mt19937_64 rng(common.seed);
      std::uniform_real_distribution<double> logq(std::log(1e-3), std::log(1e3));
      double min_rhs = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < o->quotients; ++k)
        min_rhs = std::min(min_rhs, rigidity::mean_curvature_rhs(std::exp(logq(rng))));
      rep.result["randomQuotients"] = {{"count", o->quotients}, {"minRhs", num_json(min_rhs)}};
      if (o->quotients > 0) rep.check("rhsAtLeast2", min_rhs >= 2.0 - o->tol, min_rhs, 2.0);

      if (o->so.mesh.empty()) {
        try {
          const auto um = rigidity::umbilic_probe(o->so.surface(), o->radii);
          ordered_json dirs = ordered_json::array();
          for (const auto& d : um.directions)
            dirs.push_back({{"direction", vec_json(d.direction)}, {"limit", d.limit}, {"expected", d.expected}});
          rep.result["umbilic"] = {{"radii", um.radii}, {"directions", dirs}, {"maxError", um.max_error}};
          rep.check("umbilicLimit", um.max_error <= 1e-4, um.max_error, 1e-4);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::Configuration) throw;
          rep.result["umbilic"] = {{"skipped", e.what()}};
        }
      }

      ordered_json nd = ordered_json::array();
      double nd_max = 0.0;
      for (int n : o->dims)
        for (double r : o->nd_radii) {
          const auto pts = rigidity::sample_hypersphere(n, r, o->nd_samples, common.seed);
          const auto cr = rigidity::conformal_nd_check(n, r, pts);
          nd.push_back({{"n", n}, {"r", r}, {"maxAbsGap", cr.max_abs_gap}});
          nd_max = std::max(nd_max, cr.max_abs_gap);
        }
      rep.result["conformalND"] = nd;
      if (!nd.empty()) rep.check("conformalND", nd_max <= 1e-12, nd_max, 1e-12);

      std::ostringstream csv;
      csv << "x,y,z,H,q,surface2,gap\n";
      for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        csv << csv_num(s.point.x()) << ',' << csv_num(s.point.y()) << ',' << csv_num(s.point.z()) << ','
            << csv_num(s.mean_curvature) << ',' << (s.support_quotient ? csv_num(*s.support_quotient) : "") << ','
            << (s.support_quotient ? csv_num(s2.residual[i]) : "") << ','
            << (s.support_quotient && !mc.rows[i].singular ? csv_num(mc.rows[i].gap) : "") << '\n';
      }
      rep.csv = csv.str();
    };
  });
}

}  // namespace grl::cli
