#include <cmath>
#include <memory>
#include <sstream>

#include "grl/error.hpp"
#include "grl/kelvin/kelvin.hpp"
#include "report.hpp"

namespace grl::cli {

void add_kelvin(CLI::App& app, Common& common, Runner& runner) {
  auto* sub = app.add_subcommand("kelvin", "Kelvin transform: conformal factor and curvature correspondence");
  struct Opts {
    SurfaceOptions so;
    std::size_t samples = 500;
    std::string method = "finite-difference";
    double fd_step = kelvin::kDefaultFdStep;
    double tol = 1e-8;
    std::vector<double> point;
  };
  auto o = std::make_shared<Opts>();
  o->so.add(*sub, false);
  sub->add_option("--samples", o->samples, "random surface samples");
  sub->add_option("--method", o->method, "closed-form or finite-difference")
      ->check(CLI::IsMember({"closed-form", "finite-difference"}));
  sub->add_option("--fd-step", o->fd_step, "parameter step of the finite-difference path");
  sub->add_option("--tol", o->tol, "correspondence tolerance");
  sub->add_option("--point", o->point, "only transform this point x,y,z")->delimiter(',')->expected(3);
  sub->callback([&runner, &common, o] {
    runner = [o, &common](Report& rep) {
      rep.command = "kelvin";
      if (!o->point.empty()) {
        const Vec3 y(o->point[0], o->point[1], o->point[2]);
        const Vec3 img = kelvin::kelvin_point(y);
        const double inv = (kelvin::kelvin_point(img) - y).norm() / y.norm();
        rep.params = {{"point", vec_json(y)}};
        rep.result = {{"image", vec_json(img)}, {"involutionError", inv}};
        rep.check("involution", inv <= 1e-13, inv, 1e-13);
        return;
      }
      const auto surf = o->so.surface();
      const auto method = o->method == "closed-form" ? kelvin::CurvatureMethod::ClosedForm
                                                     : kelvin::CurvatureMethod::FiniteDifference;
      rep.params = {{"surface", o->so.describe()}, {"samples", o->samples}, {"seed", common.seed}};
      if (method == kelvin::CurvatureMethod::FiniteDifference) rep.params["fdStep"] = o->fd_step;

      const auto pts = kelvin::random_points(surf, o->samples, common.seed);
      std::vector<Vec3> away;
      for (const Vec3& p : pts)
        if (p.norm() >= kelvin::kConformalExclusion) away.push_back(p);
      const auto conf = kelvin::conformal_factor_check(surf, away);
      const auto corr = kelvin::curvature_correspondence_residual(surf, pts, method, o->fd_step);

      rep.result["surface"] = surf.describe();
      rep.result["sampleCount"] = corr.rows.size();
      rep.result["skipped"] = corr.skipped;
      rep.result["maxResidual"] = corr.max_abs_residual;
      rep.result["method"] = kelvin::to_string(method);
      rep.result["maxConformalGap"] = conf.max_gap;
      rep.check("conformalFactor", conf.max_gap <= 1e-12, conf.max_gap, 1e-12);
      rep.check("correspondence", corr.max_abs_residual <= o->tol, corr.max_abs_residual, o->tol);

      std::ostringstream csv;
      csv << "x,y,z,imageCurvature,surfaceCurvature,rhs,residual\n";
      for (const auto& r : corr.rows)
        csv << csv_num(r.point.x()) << ',' << csv_num(r.point.y()) << ',' << csv_num(r.point.z()) << ','
            << csv_num(r.image_curvature) << ',' << csv_num(r.surface_curvature) << ',' << csv_num(r.rhs) << ','
            << csv_num(r.residual) << '\n';
      rep.csv = csv.str();
    };
  });
}

}  // namespace grl::cli
