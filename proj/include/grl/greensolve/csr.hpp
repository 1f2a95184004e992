#pragma once

#include <vector>

#include <Eigen/Core>

#include "grl/parallel.hpp"

namespace grl::greensolve {

using Vector = Eigen::VectorXd;

// Compressed sparse rows with column indices sorted inside each row.
struct CsrMatrix {
  int rows = 0;
  std::vector<int> row_ptr;
  std::vector<int> col;
  std::vector<double> val;

  std::size_t nonzeros() const { return val.size(); }
  double at(int i, int j) const;
  std::vector<double> diagonal() const;

  // y = A x. Rows are independent, so both paths agree bitwise.
  void multiply(const Vector& x, Vector& y, Exec exec = Exec::Parallel) const;
};

double dot(const Vector& a, const Vector& b, Exec exec = Exec::Parallel);

struct CgOptions {
  double relative_tolerance = 1e-10;
  int max_iterations = 20000;
  // The operator annihilates constants: keep the residual orthogonal to them.
  bool constant_kernel = true;
  Exec exec = Exec::Parallel;
};

struct CgResult {
  Vector x;
  int iterations = 0;
  double residual_norm = 0.0;  // true residual ||b - A x||
  double rhs_norm = 0.0;
};

/// Jacobi-preconditioned conjugate gradients for symmetric positive
/// (semi)definite systems. Throws SolverError if the true residual does not
/// reach relative_tolerance * ||b|| within max_iterations.
CgResult conjugate_gradient(const CsrMatrix& a, const Vector& b, const CgOptions& opts = {},
                            const Vector* x0 = nullptr);

}  // namespace grl::greensolve
