#include "grl/radial/hemisphere.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/AutoDiff>

#include "grl/error.hpp"
#include "grl/radial/ode.hpp"

namespace grl::radial {

namespace {

constexpr double kTwoPi = 6.28318530717958647693;

}  // namespace

HemisphereGrid HemisphereGrid::from_function(double theta_collar, int n_theta, int n_phi,
                                             const std::function<double(double, double)>& f) {
  HemisphereGrid g;
  g.theta_collar = theta_collar;
  g.n_theta = n_theta;
  g.n_phi = n_phi;
  if (n_theta < 4 || n_phi < 4) throw Error(ErrorKind::Input, "grid needs at least 4 rows and 4 columns");
  g.rho.resize(static_cast<std::size_t>(n_theta) * n_phi);
  for (int i = 0; i < n_theta; ++i)
    for (int j = 0; j < n_phi; ++j) g.at(i, j) = f(g.theta(i), g.phi(j));
  double mean = 0.0;
  for (int j = 0; j < n_phi; ++j) mean += g.at(g.pole_row(), j);
  mean /= n_phi;
  for (int j = 0; j < n_phi; ++j) g.at(g.pole_row(), j) = mean;
  return g;
}

double HemisphereGrid::dtheta() const { return (kHalfPi - theta_collar) / (n_theta - 1); }
double HemisphereGrid::dphi() const { return kTwoPi / n_phi; }
double HemisphereGrid::theta(int i) const { return i == n_theta - 1 ? kHalfPi : theta_collar + i * dtheta(); }
double HemisphereGrid::phi(int j) const { return kTwoPi * j / n_phi; }

void HemisphereGrid::validate() const {
  if (!(theta_collar > 0.0 && theta_collar < 0.5 * kHalfPi))
    throw Error(ErrorKind::Validation, "collar latitude must lie in (0, pi/4)");
  if (n_theta < 4 || n_phi < 4) throw Error(ErrorKind::Validation, "grid needs at least 4 rows and 4 columns");
  if (n_phi % 2 != 0) throw Error(ErrorKind::Validation, "n_phi must be even");
  if (rho.size() != static_cast<std::size_t>(n_theta) * n_phi)
    throw Error(ErrorKind::Validation, "rho has the wrong size");
  for (double v : rho)
    if (!std::isfinite(v)) throw Error(ErrorKind::Validation, "rho is not finite");
  const double p = at(pole_row(), 0);
  for (int j = 1; j < n_phi; ++j)
    if (std::abs(at(pole_row(), j) - p) > 1e-10) throw Error(ErrorKind::Validation, "pole row is not constant");
}

double interpolate(const HemisphereGrid& grid, double theta, double phi) {
  if (!(theta >= grid.theta_collar - 1e-14 && theta <= kHalfPi + 1e-14))
    throw Error(ErrorKind::Domain, "latitude outside the grid");
  double t = (theta - grid.theta_collar) / grid.dtheta();
  t = std::clamp(t, 0.0, static_cast<double>(grid.n_theta - 1));
  const int i0 = std::min(static_cast<int>(std::floor(t)), grid.n_theta - 2);
  const double a = t - i0;
  double s = std::fmod(phi, kTwoPi);
  if (s < 0.0) s += kTwoPi;
  s /= grid.dphi();
  const int j0 = static_cast<int>(std::floor(s)) % grid.n_phi;
  const int j1 = (j0 + 1) % grid.n_phi;
  const double b = s - std::floor(s);
  const double lo = (1.0 - b) * grid.at(i0, j0) + b * grid.at(i0, j1);
  const double hi = (1.0 - b) * grid.at(i0 + 1, j0) + b * grid.at(i0 + 1, j1);
  return (1.0 - a) * lo + a * hi;
}

namespace {

struct Layout {
  int nt, np;
  double dth, dph;
  // Central and half-step phi differences are divided by 2 sin(dphi) and
  // 2 sin(dphi/2) instead of 2 dphi and dphi: still second order, and exact
  // on the first Fourier mode, which dominates next to the pole.
  double span_c, span_h;
  std::vector<double> cos_node, cos_half, cos_phi, sin_phi;  // cos_half[i] at theta_{i+1/2}
  double sin_pole_half;

  explicit Layout(const HemisphereGrid& g) : nt(g.n_theta), np(g.n_phi), dth(g.dtheta()), dph(g.dphi()),
        span_c(2.0 * std::sin(dph)), span_h(2.0 * std::sin(0.5 * dph)) {
    cos_node.resize(nt);
    cos_half.resize(nt - 1);
    for (int i = 0; i < nt; ++i) cos_node[i] = std::cos(g.theta(i));
    for (int i = 0; i + 1 < nt; ++i) cos_half[i] = std::cos(g.theta_collar + (i + 0.5) * dth);
    cos_phi.resize(np);
    sin_phi.resize(np);
    for (int j = 0; j < np; ++j) {
      cos_phi[j] = std::cos(g.phi(j));
      sin_phi[j] = std::sin(g.phi(j));
    }
    sin_pole_half = std::sin(g.theta_collar + (nt - 1.5) * dth);
  }
  int pole() const { return nt - 1; }
  int wrap(int j) const { return (j % np + np) % np; }
};

// Pole gradient in the tangent plane at e3, from the first Fourier mode of
// the row next to the pole.
template <class S, class Rho>
void pole_gradient(const Layout& L, Rho&& rho, S& g1, S& g2) {
  const int r = L.pole() - 1;
  g1 = rho(r, 0) * L.cos_phi[0];
  g2 = rho(r, 0) * L.sin_phi[0];
  for (int j = 1; j < L.np; ++j) {
    g1 += rho(r, j) * L.cos_phi[j];
    g2 += rho(r, j) * L.sin_phi[j];
  }
  const double scale = 2.0 / (L.np * L.cos_node[r]);
  g1 *= scale;
  g2 *= scale;
}

// rho_phi / cos(theta): central difference off the pole, tangential
// derivative of the pole gradient on it.
template <class S, class Rho>
S scaled_dphi(const Layout& L, int i, int j, Rho&& rho, const S& g1, const S& g2) {
  if (i == L.pole()) return -g1 * L.sin_phi[L.wrap(j)] + g2 * L.cos_phi[L.wrap(j)];
  return (rho(i, L.wrap(j + 1)) - rho(i, L.wrap(j - 1))) / (L.span_c * L.cos_node[i]);
}

// cos(theta_{i+1/2}) rho_theta / W at (i + 1/2, j).
template <class S, class Rho>
S theta_flux(const Layout& L, int i, int j, Rho&& rho, const S& g1, const S& g2) {
  using std::sqrt;
  const S rt = (rho(i + 1, j) - rho(i, j)) / L.dth;
  const S sp = 0.5 * (scaled_dphi(L, i, j, rho, g1, g2) + scaled_dphi(L, i + 1, j, rho, g1, g2));
  const S w = sqrt(1.0 + rt * rt + sp * sp);
  return L.cos_half[i] * rt / w;
}

// rho_phi / W at (i, j + 1/2).
template <class S, class Rho>
S phi_flux(const Layout& L, int i, int j, Rho&& rho) {
  using std::sqrt;
  const int jp = L.wrap(j + 1);
  const S rp = (rho(i, jp) - rho(i, j)) / L.span_h;
  const S rt = 0.25 * ((rho(i + 1, j) - rho(i - 1, j)) + (rho(i + 1, jp) - rho(i - 1, jp))) / L.dth;
  const double c = L.cos_node[i];
  const S w = sqrt(1.0 + rt * rt + rp * rp / (c * c));
  return rp / w;
}

template <class S, class Rho>
S node_residual(const Layout& L, int i, int j, Rho&& rho, const S& g1, const S& g2) {
  using std::exp;
  using std::sqrt;
  const double c = L.cos_node[i];
  const S div_theta = (theta_flux(L, i, j, rho, g1, g2) - theta_flux(L, i - 1, j, rho, g1, g2)) / (c * L.dth);
  const S div_phi = (phi_flux<S>(L, i, j, rho) - phi_flux<S>(L, i, L.wrap(j - 1), rho)) / (c * c * L.span_h);
  const S rt = (rho(i + 1, j) - rho(i - 1, j)) / (2.0 * L.dth);
  const S sp = scaled_dphi(L, i, j, rho, g1, g2);
  const S w = sqrt(1.0 + rt * rt + sp * sp);
  return div_theta + div_phi + 0.5 * exp(2.0 * rho(i, j)) * w;
}

// Finite volume over the polar cap above theta_{n-3/2}.
template <class S, class Rho>
S pole_residual(const Layout& L, Rho&& rho, const S& g1, const S& g2) {
  using std::exp;
  using std::sqrt;
  const int r = L.pole() - 1;
  S flux = theta_flux(L, r, 0, rho, g1, g2);
  for (int j = 1; j < L.np; ++j) flux += theta_flux(L, r, j, rho, g1, g2);
  const double cap_area = kTwoPi * (1.0 - L.sin_pole_half);
  const S div = -flux * L.dph / cap_area;
  const S w = sqrt(1.0 + g1 * g1 + g2 * g2);
  return div + 0.5 * exp(2.0 * rho(L.pole(), 0)) * w;
}

double plain_residual_at(const Layout& L, const HemisphereGrid& grid, int i, int j, double g1, double g2) {
  auto rho = [&](int a, int b) { return grid.at(a, b); };
  if (i == L.pole()) return pole_residual<double>(L, rho, g1, g2);
  return node_residual<double>(L, i, j, rho, g1, g2);
}

using Ad9 = Eigen::AutoDiffScalar<Eigen::Matrix<double, 9, 1>>;
using AdX = Eigen::AutoDiffScalar<Eigen::VectorXd>;

int unknown_of(const Layout& L, int i, int j) {
  if (i == L.pole()) return (L.nt - 2) * L.np;
  return (i - 1) * L.np + j;
}

void check_grid(const HemisphereGrid& grid) { grid.validate(); }

}  // namespace

int unknown_count(const HemisphereGrid& grid) { return (grid.n_theta - 2) * grid.n_phi + 1; }

std::vector<double> pde_residual(const HemisphereGrid& grid, Exec exec) {
  check_grid(grid);
  const Layout L(grid);
  double g1 = 0.0, g2 = 0.0;
  pole_gradient(L, [&](int a, int b) { return grid.at(a, b); }, g1, g2);
  std::vector<double> out(grid.rho.size(), 0.0);
  parallel_for(
      static_cast<std::size_t>(L.nt - 1),
      [&](std::size_t k) {
        const int i = static_cast<int>(k) + 1;
        if (i == L.pole()) {
          const double p = plain_residual_at(L, grid, i, 0, g1, g2);
          for (int j = 0; j < L.np; ++j) out[static_cast<std::size_t>(i) * L.np + j] = p;
          return;
        }
        for (int j = 0; j < L.np; ++j)
          out[static_cast<std::size_t>(i) * L.np + j] = plain_residual_at(L, grid, i, j, g1, g2);
      },
      exec);
  return out;
}

double max_interior_abs(const HemisphereGrid& grid, const std::vector<double>& field) {
  double m = 0.0;
  for (std::size_t k = static_cast<std::size_t>(grid.n_phi); k < field.size(); ++k)
    m = std::max(m, std::abs(field[k]));
  return m;
}

double max_abs_up_to(const HemisphereGrid& grid, const std::vector<double>& field, double theta_max) {
  double m = 0.0;
  for (int i = 1; i < grid.n_theta; ++i) {
    if (grid.theta(i) > theta_max) break;
    for (int j = 0; j < grid.n_phi; ++j)
      m = std::max(m, std::abs(field[static_cast<std::size_t>(i) * grid.n_phi + j]));
  }
  return m;
}

std::vector<JacobianEntry> pde_jacobian(const HemisphereGrid& grid, Exec exec) {
  check_grid(grid);
  const Layout L(grid);
  const int np = L.np;
  const int near = L.pole() - 1;
  const int interior_rows = near - 1;  // rows 1 .. near-1 use the 3x3 stencil

  std::vector<std::vector<JacobianEntry>> rows(static_cast<std::size_t>(L.nt - 1));

  parallel_for(
      static_cast<std::size_t>(L.nt - 1),
      [&](std::size_t k) {
        const int i = static_cast<int>(k) + 1;
        auto& out = rows[k];
        if (i <= interior_rows) {
          out.reserve(static_cast<std::size_t>(np) * 9);
          for (int j = 0; j < np; ++j) {
            auto rho = [&](int a, int b) -> Ad9 {
              const int di = a - i;
              int dj = b - j;
              if (dj > 1) dj -= np;
              if (dj < -1) dj += np;
              if (a == 0) return Ad9(grid.at(a, b));
              return Ad9(grid.at(a, b), 9, 3 * (di + 1) + (dj + 1));
            };
            const Ad9 zero(0.0);
            const Ad9 r = node_residual<Ad9>(L, i, j, rho, zero, zero);
            const int eq = unknown_of(L, i, j);
            for (int di = -1; di <= 1; ++di) {
              if (i + di == 0) continue;
              for (int dj = -1; dj <= 1; ++dj)
                out.push_back({eq, unknown_of(L, i + di, L.wrap(j + dj)), r.derivatives()(3 * (di + 1) + (dj + 1))});
            }
          }
          return;
        }
        // Rows touching the pole couple to the full near-pole row.
        const int nvar = np + 4;
        auto var_of = [&](int a, int b, int j) -> int {
          if (a == L.pole()) return np + 3;
          if (a == near) return 3 + b;
          int dj = b - j;
          if (dj > 1) dj -= np;
          if (dj < -1) dj += np;
          return dj + 1;
        };
        auto make_rho = [&](int j) {
          return [&, j](int a, int b) -> AdX {
            if (a == 0) return AdX(grid.at(a, b), Eigen::VectorXd::Zero(nvar));
            return AdX(grid.at(a, b), nvar, var_of(a, b, j));
          };
        };
        auto emit = [&](int eq, const AdX& r, int j) {
          for (int v = 0; v < nvar; ++v) {
            const double d = r.derivatives()(v);
            if (d == 0.0) continue;
            int col;
            if (v == np + 3) {
              col = unknown_of(L, L.pole(), 0);
            } else if (v >= 3) {
              col = unknown_of(L, near, v - 3);
            } else {
              if (near - 1 == 0) continue;
              col = unknown_of(L, near - 1, L.wrap(j + v - 1));
            }
            out.push_back({eq, col, d});
          }
        };
        if (i == near) {
          for (int j = 0; j < np; ++j) {
            auto rho = make_rho(j);
            AdX g1, g2;
            pole_gradient(L, rho, g1, g2);
            emit(unknown_of(L, i, j), node_residual<AdX>(L, i, j, rho, g1, g2), j);
          }
        } else {
          auto rho = make_rho(0);
          AdX g1, g2;
          pole_gradient(L, rho, g1, g2);
          emit(unknown_of(L, L.pole(), 0), pole_residual<AdX>(L, rho, g1, g2), 0);
        }
      },
      exec);

  std::vector<JacobianEntry> all;
  for (auto& r : rows) all.insert(all.end(), r.begin(), r.end());
  return all;
}

namespace {

Eigen::VectorXd pack_residual(const HemisphereGrid& grid, const std::vector<double>& field) {
  const Layout L(grid);
  Eigen::VectorXd r(unknown_count(grid));
  for (int i = 1; i < L.pole(); ++i)
    for (int j = 0; j < L.np; ++j) r(unknown_of(L, i, j)) = field[static_cast<std::size_t>(i) * L.np + j];
  r(unknown_of(L, L.pole(), 0)) = field[static_cast<std::size_t>(L.pole()) * L.np];
  return r;
}

void apply_step(HemisphereGrid& grid, const HemisphereGrid& base, const Eigen::VectorXd& dx, double alpha) {
  const Layout L(grid);
  for (int i = 1; i < L.pole(); ++i)
    for (int j = 0; j < L.np; ++j) grid.at(i, j) = base.at(i, j) + alpha * dx(unknown_of(L, i, j));
  const double p = base.at(L.pole(), 0) + alpha * dx(unknown_of(L, L.pole(), 0));
  for (int j = 0; j < L.np; ++j) grid.at(L.pole(), j) = p;
}

}  // namespace

NewtonResult newton_solve(const HemisphereGrid& init, const std::vector<double>& dirichlet,
                          const NewtonOptions& opts) {
  init.validate();
  if (dirichlet.size() != static_cast<std::size_t>(init.n_phi))
    throw Error(ErrorKind::Input, "dirichlet row must have n_phi values");
  for (double v : dirichlet)
    if (!std::isfinite(v)) throw Error(ErrorKind::Input, "dirichlet data is not finite");

  NewtonResult res;
  res.grid = init;
  std::copy(dirichlet.begin(), dirichlet.end(), res.grid.rho.begin());

  // Convergence is judged in the max norm; step acceptance uses the
  // Euclidean norm, for which the Newton direction is a descent direction.
  struct Eval {
    Eigen::VectorXd r;
    double max_norm;
    double l2;
  };
  auto evaluate = [&](const HemisphereGrid& g) {
    Eval e;
    e.r = pack_residual(g, pde_residual(g, opts.exec));
    e.max_norm = e.r.lpNorm<Eigen::Infinity>();
    e.l2 = e.r.norm();
    return e;
  };
  Eval current = evaluate(res.grid);
  res.history.push_back(current.max_norm);

  const int n = unknown_count(init);
  while (current.max_norm > opts.tol) {
    if (res.iterations >= opts.max_iterations)
      throw SolverError("Newton iteration limit reached", current.max_norm, res.iterations);

    const auto entries = pde_jacobian(res.grid, opts.exec);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(entries.size());
    for (const auto& e : entries) trip.emplace_back(e.row, e.col, e.value);
    Eigen::SparseMatrix<double> jac(n, n);
    jac.setFromTriplets(trip.begin(), trip.end());
    jac.makeCompressed();

    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(jac);
    if (lu.info() != Eigen::Success)
      throw SolverError("Jacobian factorization failed: " + lu.lastErrorMessage(), current.max_norm,
                        res.iterations);
    const Eigen::VectorXd dx = lu.solve(-current.r);
    if (lu.info() != Eigen::Success || !dx.allFinite())
      throw SolverError("Newton linear solve failed", current.max_norm, res.iterations);

    HemisphereGrid trial = res.grid;
    double alpha = 1.0;
    int halvings = 0;
    Eval next;
    for (;;) {
      apply_step(trial, res.grid, dx, alpha);
      next = evaluate(trial);
      if (next.l2 < current.l2 || next.max_norm <= opts.tol) break;
      if (++halvings > opts.max_halvings)
        throw SolverError("damped Newton step failed to reduce the residual", current.max_norm, res.iterations);
      alpha *= 0.5;
    }
    res.grid = std::move(trial);
    current = std::move(next);
    ++res.iterations;
    res.history.push_back(current.max_norm);
  }
  res.residual = current.max_norm;
  return res;
}

}  // namespace grl::radial
