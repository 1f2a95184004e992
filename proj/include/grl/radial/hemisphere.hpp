#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "grl/parallel.hpp"

namespace grl::radial {

// rho(theta, phi) on rows theta_i = theta_c + i dtheta, i = 0..n_theta-1,
// with the last row at the pole and phi_j = 2 pi j / n_phi. Row 0 is the
// Dirichlet collar. Metric d theta^2 + cos^2 theta d phi^2.
struct HemisphereGrid {
  double theta_collar = 0.05;
  int n_theta = 0;
  int n_phi = 0;
  std::vector<double> rho;  // row-major, n_theta x n_phi

  static HemisphereGrid from_function(double theta_collar, int n_theta, int n_phi,
                                      const std::function<double(double, double)>& f);

  double dtheta() const;
  double dphi() const;
  double theta(int i) const;
  double phi(int j) const;
  double& at(int i, int j) { return rho[static_cast<std::size_t>(i) * n_phi + j]; }
  double at(int i, int j) const { return rho[static_cast<std::size_t>(i) * n_phi + j]; }
  int pole_row() const { return n_theta - 1; }

  /// Throws Error(Validation) when sizes, collar, finiteness or the pole
  /// row invariant fail.
  void validate() const;
};

// Bilinear interpolation in (theta, phi); theta must lie in [theta_c, pi/2].
double interpolate(const HemisphereGrid& grid, double theta, double phi);

// Discretized div(grad rho / W) + e^{2 rho} W / 2, W = sqrt(1 + |grad rho|^2),
// on every node. Row 0 is left at zero; the pole row holds the single pole
// residual in every column.
std::vector<double> pde_residual(const HemisphereGrid& grid, Exec exec = Exec::Parallel);

double max_interior_abs(const HemisphereGrid& grid, const std::vector<double>& field);

// Same, restricted to rows with theta <= theta_max (the pole row counts at
// pi/2).
double max_abs_up_to(const HemisphereGrid& grid, const std::vector<double>& field, double theta_max);

struct NewtonOptions {
  double tol = 1e-10;
  int max_iterations = 20;
  int max_halvings = 30;
  Exec exec = Exec::Parallel;
};

struct NewtonResult {
  HemisphereGrid grid;
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> history;  // max-norm residual per iterate, initial first
};

/// Damped Newton on the interior and pole unknowns. `dirichlet` replaces row
/// 0 (n_phi values). Throws SolverError after max_iterations or when 30
/// halvings fail to decrease the residual.
NewtonResult newton_solve(const HemisphereGrid& init, const std::vector<double>& dirichlet,
                          const NewtonOptions& opts = {});

// Sparse Jacobian of the interior/pole residual in triplet form; exposed for
// tests against finite differences. Unknown k < (n_theta-2) n_phi is node
// (1 + k / n_phi, k % n_phi); the last unknown is the pole.
struct JacobianEntry {
  int row;
  int col;
  double value;
};
std::vector<JacobianEntry> pde_jacobian(const HemisphereGrid& grid, Exec exec = Exec::Parallel);
int unknown_count(const HemisphereGrid& grid);

}  // namespace grl::radial
