#include "grl/io/radial_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "grl/error.hpp"

namespace grl::io {

using nlohmann::json;

json grid_to_json(const radial::HemisphereGrid& grid) {
  json j;
  j["thetaCollar"] = grid.theta_collar;
  j["nTheta"] = grid.n_theta;
  j["nPhi"] = grid.n_phi;
  j["rho"] = grid.rho;
  return j;
}

radial::HemisphereGrid grid_from_json(const json& j) {
  radial::HemisphereGrid g;
  try {
    g.theta_collar = j.at("thetaCollar").get<double>();
    g.n_theta = j.at("nTheta").get<int>();
    g.n_phi = j.at("nPhi").get<int>();
    g.rho = j.at("rho").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Validation, std::string("malformed grid JSON: ") + e.what());
  }
  if (g.n_theta < 0 || g.n_phi < 0 || g.rho.size() != static_cast<std::size_t>(g.n_theta) * g.n_phi)
    throw Error(ErrorKind::Validation, "grid JSON: rho has the wrong length");
  g.validate();
  return g;
}

void save_grid_json(const radial::HemisphereGrid& grid, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << grid_to_json(grid).dump() << '\n';
}

radial::HemisphereGrid load_grid_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Validation, std::string("grid JSON does not parse: ") + e.what());
  }
  return grid_from_json(j);
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_profile_csv(const radial::RadialProfile& profile, std::ostream& out) {
  out << "theta,u,du\n";
  for (std::size_t k = 0; k < profile.thetas.size(); ++k)
    out << num(profile.thetas[k]) << ',' << num(profile.u[k]) << ',' << num(profile.du[k]) << '\n';
}

radial::RadialProfile read_profile_csv(std::istream& in) {
  radial::RadialProfile p;
  std::string line;
  if (!std::getline(in, line) || line.rfind("theta,u,du", 0) != 0)
    throw Error(ErrorKind::Validation, "profile CSV must start with the header theta,u,du");
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    double v[3];
    char sep;
    if (!(row >> v[0] >> sep >> v[1] >> sep >> v[2]))
      throw Error(ErrorKind::Validation, "profile CSV line " + std::to_string(lineno) + " is malformed");
    p.thetas.push_back(v[0]);
    p.u.push_back(v[1]);
    p.du.push_back(v[2]);
  }
  return p;
}

void write_grid_csv(const radial::HemisphereGrid& grid, std::ostream& out) {
  out << "theta,phi,rho\n";
  for (int i = 0; i < grid.n_theta; ++i)
    for (int j = 0; j < grid.n_phi; ++j)
      out << num(grid.theta(i)) << ',' << num(grid.phi(j)) << ',' << num(grid.at(i, j)) << '\n';
}

}  // namespace grl::io
