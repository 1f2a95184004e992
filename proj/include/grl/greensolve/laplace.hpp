#pragma once

#include "grl/geometry/trimesh.hpp"
#include "grl/greensolve/csr.hpp"

namespace grl::greensolve {

// Weak-form -Laplace-Beltrami: cotangent stiffness plus lumped (barycentric)
// mass. stiffness(i, j) = -(cot a_ij + cot b_ij) / 2 off the diagonal; the
// diagonal completes zero row sums.
struct LaplaceOperator {
  CsrMatrix stiffness;
  Vector mass;

  double area() const;
};

LaplaceOperator assemble(const geometry::TriMesh& mesh, Exec exec = Exec::Parallel);

/// Smallest nonzero eigenvalue of S v = lambda M v by inverse iteration on the
/// mass-orthogonal complement of constants. Sanity check only.
double smallest_nonzero_eigenvalue(const LaplaceOperator& op, double tol = 1e-10, int max_iter = 200);

}  // namespace grl::greensolve
