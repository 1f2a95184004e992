#include "grl/radial/lemmas.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "grl/error.hpp"

namespace grl::radial {

namespace {

constexpr double kRelSlack = 1e-12;
constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

Vec2 flux_field(const Vec2& v) { return v / std::sqrt(1.0 + v.squaredNorm()); }

double ellipticity_constant(double bound) { return std::pow(1.0 + bound * bound, 1.5); }

FieldGap field_gap(const Vec2& a, const Vec2& b, double bound) {
  if (!(bound >= 0.0)) throw Error(ErrorKind::Input, "bound must be nonnegative");
  if (a.norm() > bound || b.norm() > bound) throw Error(ErrorKind::Input, "|a| and |b| must not exceed the bound");
  FieldGap g;
  g.lambda = ellipticity_constant(bound);
  const Vec2 dv = flux_field(b) - flux_field(a);
  const Vec2 d = b - a;
  const double len = d.norm();
  g.lipschitz_lhs = dv.norm();
  g.lipschitz_rhs = g.lambda * len;
  g.monotone_lhs = dv.dot(d);
  g.monotone_rhs = d.squaredNorm() / g.lambda;
  // Rounding in V(b) - V(a) is absolute, of order eps.
  const double round = 8.0 * kEps * len;
  g.lipschitz_ok = g.lipschitz_lhs <= g.lipschitz_rhs * (1.0 + kRelSlack) + 8.0 * kEps;
  g.monotone_ok = g.monotone_lhs >= g.monotone_rhs * (1.0 - kRelSlack) - round;
  return g;
}

SelfAdjointTensor build_selfadjoint(const Vec2& a, const Vec2& b, double lambda) {
  const double na = a.norm();
  if (!(na > 0.0)) throw Error(ErrorKind::Input, "a must be nonzero");
  if (!(lambda >= 1.0)) throw Error(ErrorKind::Input, "lambda must be at least 1");
  if (b.norm() > lambda * na * (1.0 + kRelSlack)) throw Error(ErrorKind::Input, "|b| exceeds lambda |a|");
  if (b.dot(a) < na * na / lambda * (1.0 - kRelSlack)) throw Error(ErrorKind::Input, "<b, a> is below |a|^2 / lambda");

  const Vec2 e1 = a / na;
  const Vec2 e2(-e1.y(), e1.x());
  Mat2 frame;
  frame.col(0) = e1;
  frame.col(1) = e2;
  const double b1 = b.dot(e1) / na;
  const double b2 = b.dot(e2) / na;
  Mat2 local;
  local << b1, b2, b2, 3.0 * lambda * lambda * lambda;

  SelfAdjointTensor t;
  t.matrix = frame * local * frame.transpose();
  t.matrix(1, 0) = t.matrix(0, 1);
  t.eigenvalues = Eigen::SelfAdjointEigenSolver<Mat2>(t.matrix, Eigen::EigenvaluesOnly).eigenvalues();
  t.lower = 0.5 / lambda;
  t.upper = 4.0 * lambda * lambda * lambda;
  t.within_bounds = t.eigenvalues(0) >= t.lower * (1.0 - kRelSlack) && t.eigenvalues(1) <= t.upper * (1.0 + kRelSlack);
  return t;
}

}  // namespace grl::radial
