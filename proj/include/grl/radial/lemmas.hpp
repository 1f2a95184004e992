#pragma once

#include "grl/geometry/trimesh.hpp"

namespace grl::radial {

// V(v) = v / sqrt(1 + |v|^2), the flux field of the area integrand.
Vec2 flux_field(const Vec2& v);

// (1 + M^2)^{3/2}
double ellipticity_constant(double bound);

struct FieldGap {
  double lambda = 0.0;
  double lipschitz_lhs = 0.0;  // |V(b) - V(a)|
  double lipschitz_rhs = 0.0;  // lambda |b - a|
  double monotone_lhs = 0.0;   // <V(b) - V(a), b - a>
  double monotone_rhs = 0.0;   // |b - a|^2 / lambda
  bool lipschitz_ok = false;
  bool monotone_ok = false;
};

/// Throws Error(Input) when |a| or |b| exceeds the bound.
FieldGap field_gap(const Vec2& a, const Vec2& b, double bound);

struct SelfAdjointTensor {
  Mat2 matrix;
  Vec2 eigenvalues;  // ascending
  double lower = 0.0;  // 1 / (2 lambda)
  double upper = 0.0;  // 4 lambda^3
  bool within_bounds = false;
};

// Symmetric A with A a = b. In the frame (a/|a|, a/|a| rotated by 90
// degrees) A = [[b1, b2], [b2, 3 lambda^3]] where (b1, b2) are the frame
// components of b divided by |a|. Requires a != 0, lambda >= 1,
// |b| <= lambda |a| and <b, a> >= |a|^2 / lambda; throws Error(Input) otherwise.
SelfAdjointTensor build_selfadjoint(const Vec2& a, const Vec2& b, double lambda);

}  // namespace grl::radial
