#include "grl/radial/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "grl/error.hpp"

namespace grl::radial {

namespace {

constexpr int kRows = 3;

// |grad u - 2 e3| for grad u = a e_theta + b e_phi at latitude theta.
double raw_gap(double a, double b, double theta) {
  return std::sqrt(std::max(a * a + b * b - 4.0 * a * std::cos(theta) + 4.0, 0.0));
}

AsymptoticsRow empty_row(double theta) {
  AsymptoticsRow r;
  r.theta = theta;
  r.ratio1_min = std::numeric_limits<double>::infinity();
  r.ratio1_max = -std::numeric_limits<double>::infinity();
  return r;
}

void add(AsymptoticsRow& row, double ratio1, double ratio2, double raw) {
  row.ratio1_min = std::min(row.ratio1_min, ratio1);
  row.ratio1_max = std::max(row.ratio1_max, ratio1);
  row.ratio2_max = std::max(row.ratio2_max, ratio2);
  row.raw_max = std::max(row.raw_max, raw);
}

AsymptoticsReport finish(std::vector<AsymptoticsRow> rows, double eps) {
  AsymptoticsReport rep;
  rep.epsilon = eps;
  rep.rows = std::move(rows);
  for (const auto& r : rep.rows) {
    rep.ratio1_deviation = std::max({rep.ratio1_deviation, std::abs(r.ratio1_min - 1.0), std::abs(r.ratio1_max - 1.0)});
    rep.ratio2_max = std::max(rep.ratio2_max, r.ratio2_max);
    rep.raw_max = std::max(rep.raw_max, r.raw_max);
  }
  rep.ratio1_ok = rep.ratio1_deviation <= eps;
  rep.ratio2_ok = rep.ratio2_max <= eps;
  rep.pass = rep.ratio1_ok && rep.ratio2_ok;
  return rep;
}

}  // namespace

AsymptoticsReport asymptotics_check(const HemisphereGrid& grid, double epsilon) {
  grid.validate();
  if (!(epsilon > 0.0)) throw Error(ErrorKind::Input, "epsilon must be positive");
  const double h = grid.dtheta();
  const double sdp = std::sin(grid.dphi());
  const int np = grid.n_phi;
  auto u = [&](int i, int j) { return std::exp(grid.at(i, (j + np) % np)); };

  std::vector<AsymptoticsRow> rows;
  for (int i = 0; i < kRows; ++i) {
    const double th = grid.theta(i);
    AsymptoticsRow row = empty_row(th);
    for (int j = 0; j < np; ++j) {
      const double dth = i == 0 ? (-3.0 * u(0, j) + 4.0 * u(1, j) - u(2, j)) / (2.0 * h)
                                : (u(i + 1, j) - u(i - 1, j)) / (2.0 * h);
      const double dph = (u(i, j + 1) - u(i, j - 1)) / (2.0 * sdp * std::cos(th));
      const double r1 = u(i, j) / (2.0 * std::sin(th));
      const double r2 = std::hypot(dth - 2.0 * std::cos(th), dph);
      add(row, r1, r2, raw_gap(dth, dph, th));
    }
    rows.push_back(row);
  }
  return finish(std::move(rows), epsilon);
}

AsymptoticsReport asymptotics_check(const RadialProfile& profile, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorKind::Input, "epsilon must be positive");
  if (profile.thetas.size() < kRows || profile.u.size() < kRows || profile.du.size() < kRows)
    throw Error(ErrorKind::Input, "profile needs at least three nodes");
  std::vector<AsymptoticsRow> rows;
  for (int k = 0; k < kRows; ++k) {
    const double th = profile.thetas[k];
    if (!(th > 0.0)) throw Error(ErrorKind::Input, "profile thetas must be positive");
    AsymptoticsRow row = empty_row(th);
    const double du = profile.du[k];
    add(row, profile.u[k] / (2.0 * std::sin(th)), std::abs(du - 2.0 * std::cos(th)), raw_gap(du, 0.0, th));
    rows.push_back(row);
  }
  return finish(std::move(rows), epsilon);
}

}  // namespace grl::radial
