#include "report.hpp"

#include <cmath>
#include <cstdio>

#include "grl/error.hpp"

namespace grl::cli {

bool Report::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void SurfaceOptions::add(CLI::App& app, bool allow_mesh) {
  app.add_option("--shape", shape, "sphere or ellipsoid")->check(CLI::IsMember({"sphere", "ellipsoid"}));
  app.add_option("--center", center, "x,y,z")->delimiter(',')->expected(3);
  app.add_option("--radius", radius, "sphere radius")->check(CLI::PositiveNumber);
  app.add_option("--semiaxes", semiaxes, "a,b,c")->delimiter(',')->expected(3);
  app.add_flag("--no-normalize", no_normalize, "keep the inline shape's own area");
  if (allow_mesh) app.add_option("--mesh", mesh, "OFF or OBJ file instead of an inline shape");
}

geometry::ParamSurface SurfaceOptions::surface() const {
  auto vec = [](const std::vector<double>& v) { return Vec3(v[0], v[1], v[2]); };
  std::optional<geometry::ParamSurface> s;
  if (shape == "sphere") {
    s = geometry::ParamSurface::sphere(center.empty() ? Vec3(0, 0, radius) : vec(center), radius);
  } else {
    const Vec3 axes = semiaxes.empty() ? Vec3(1, 1, 1.5) : vec(semiaxes);
    s = geometry::ParamSurface::ellipsoid(center.empty() ? Vec3(0, 0, axes.z()) : vec(center), axes);
  }
  return no_normalize ? *s : s->normalized_area();
}

ordered_json SurfaceOptions::describe() const {
  ordered_json j;
  if (!mesh.empty()) {
    j["mesh"] = mesh;
    return j;
  }
  const geometry::ParamSurface s = surface();
  j["kind"] = shape;
  j["center"] = vec_json(s.center());
  if (shape == "sphere")
    j["radius"] = s.semiaxes().x();
  else
    j["semiaxes"] = vec_json(s.semiaxes());
  j["normalization"] = no_normalize ? "none" : "area-4pi";
  return j;
}

ordered_json vec_json(const Vec3& v) { return ordered_json::array({num_json(v.x()), num_json(v.y()), num_json(v.z())}); }

ordered_json num_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::string csv_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace grl::cli
