#pragma once

#include <filesystem>
#include <iosfwd>

#include <json.hpp>

#include "grl/radial/hemisphere.hpp"
#include "grl/radial/ode.hpp"

namespace grl::io {

// {"thetaCollar", "nTheta", "nPhi", "rho": row-major}
nlohmann::json grid_to_json(const radial::HemisphereGrid& grid);
/// Throws Error(Validation) on missing keys, size mismatch or a grid that
/// fails its invariants.
radial::HemisphereGrid grid_from_json(const nlohmann::json& j);

void save_grid_json(const radial::HemisphereGrid& grid, const std::filesystem::path& path);
radial::HemisphereGrid load_grid_json(const std::filesystem::path& path);

// CSV with header "theta,u,du"; values at 17 significant digits.
void write_profile_csv(const radial::RadialProfile& profile, std::ostream& out);
radial::RadialProfile read_profile_csv(std::istream& in);

// "theta,phi,rho", one line per node.
void write_grid_csv(const radial::HemisphereGrid& grid, std::ostream& out);

}  // namespace grl::io
