#pragma once

#include <vector>

#include "grl/radial/hemisphere.hpp"
#include "grl/radial/ode.hpp"

namespace grl::radial {

inline constexpr double kCollarTolerance = 0.01;

// One latitude row near the collar. ratio2 compares grad(e^rho) with the
// tangential part of 2 e3, which is 2 cos(theta) e_theta; raw is the plain
// ambient |e^rho grad rho - 2 e3| and equals 2 sin(theta) on the exact solution.
struct AsymptoticsRow {
  double theta = 0.0;
  double ratio1_min = 0.0;
  double ratio1_max = 0.0;
  double ratio2_max = 0.0;
  double raw_max = 0.0;
};

struct AsymptoticsReport {
  double epsilon = kCollarTolerance;
  std::vector<AsymptoticsRow> rows;
  double ratio1_deviation = 0.0;  // max |ratio1 - 1|
  double ratio2_max = 0.0;
  double raw_max = 0.0;
  bool ratio1_ok = false;
  bool ratio2_ok = false;
  bool pass = false;
};

// Rows 0..2 of the grid; theta derivatives are central on rows 1, 2 and
// one-sided second order on row 0.
AsymptoticsReport asymptotics_check(const HemisphereGrid& grid, double epsilon = kCollarTolerance);

// First three profile nodes, using the stored u'.
AsymptoticsReport asymptotics_check(const RadialProfile& profile, double epsilon = kCollarTolerance);

}  // namespace grl::radial
