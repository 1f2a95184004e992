#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "grl/geometry/param_surface.hpp"
#include "grl/geometry/trimesh.hpp"

namespace grl::cli {

using nlohmann::ordered_json;

struct Check {
  std::string name;
  bool pass = false;
  ordered_json value;
  ordered_json threshold;
};

struct Report {
  std::string command;
  ordered_json params = ordered_json::object();
  ordered_json result = ordered_json::object();
  std::vector<Check> checks;
  std::string csv;  // written to --csv when given

  void check(std::string name, bool pass, ordered_json value, ordered_json threshold = nullptr) {
    checks.push_back({std::move(name), pass, std::move(value), std::move(threshold)});
  }
  bool pass() const;
};

struct Common {
  std::string out;
  std::string csv;
  bool no_meta = false;
  unsigned long long seed = 1;
};

// Inline shape or mesh file.
struct SurfaceOptions {
  std::string shape = "sphere";
  std::vector<double> center;
  double radius = 1.0;
  std::vector<double> semiaxes;
  bool no_normalize = false;
  std::string mesh;

  void add(CLI::App& app, bool allow_mesh);
  // Defaults: sphere (0,0,1) r=1, ellipsoid (1,1,1.5) centred on its top
  // semiaxis so it passes through the origin.
  geometry::ParamSurface surface() const;
  ordered_json describe() const;
};

// Each subcommand registers itself and returns the callback that fills the
// report once parsing succeeded.
using Runner = std::function<void(Report&)>;

void add_mesh(CLI::App& app, Common& common, Runner& runner);
void add_green(CLI::App& app, Common& common, Runner& runner);
void add_rigidity(CLI::App& app, Common& common, Runner& runner);
void add_ode(CLI::App& app, Common& common, Runner& runner);
void add_pde(CLI::App& app, Common& common, Runner& runner);
void add_moving_plane(CLI::App& app, Common& common, Runner& runner);
void add_kelvin(CLI::App& app, Common& common, Runner& runner);
void add_suite(CLI::App& app, Common& common, Runner& runner);

ordered_json vec_json(const Vec3& v);
// NaN and infinities become null in JSON; keep them readable as strings.
ordered_json num_json(double v);
std::string csv_num(double v);

}  // namespace grl::cli
