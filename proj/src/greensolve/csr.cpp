#include "grl/greensolve/csr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "grl/error.hpp"

namespace grl::greensolve {

double CsrMatrix::at(int i, int j) const {
  const auto first = col.begin() + row_ptr[i];
  const auto last = col.begin() + row_ptr[i + 1];
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return val[static_cast<std::size_t>(it - col.begin())];
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(static_cast<std::size_t>(rows), 0.0);
  for (int i = 0; i < rows; ++i) d[i] = at(i, i);
  return d;
}

void CsrMatrix::multiply(const Vector& x, Vector& y, Exec exec) const {
  y.resize(rows);
  parallel_for(
      static_cast<std::size_t>(rows),
      [&](std::size_t i) {
        double s = 0.0;
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += val[k] * x[col[k]];
        y[static_cast<Eigen::Index>(i)] = s;
      },
      exec);
}

double dot(const Vector& a, const Vector& b, Exec exec) {
  return deterministic_sum(
      static_cast<std::size_t>(a.size()),
      [&](std::size_t i) { return a[static_cast<Eigen::Index>(i)] * b[static_cast<Eigen::Index>(i)]; },
      exec);
}

namespace {

void remove_mean(Vector& v, Exec exec) {
  const double mean =
      deterministic_sum(static_cast<std::size_t>(v.size()),
                        [&](std::size_t i) { return v[static_cast<Eigen::Index>(i)]; }, exec) /
      static_cast<double>(v.size());
  v.array() -= mean;
}

}  // namespace

CgResult conjugate_gradient(const CsrMatrix& a, const Vector& b, const CgOptions& opts, const Vector* x0) {
  const Exec exec = opts.exec;
  const Eigen::Index n = a.rows;
  CgResult res;
  res.rhs_norm = std::sqrt(dot(b, b, exec));
  res.x = x0 ? *x0 : Vector::Zero(n);
  if (res.rhs_norm == 0.0) {
    res.x.setZero();
    return res;
  }
  const double target = opts.relative_tolerance * res.rhs_norm;

  Vector inv_diag(n);
  {
    const auto d = a.diagonal();
    for (Eigen::Index i = 0; i < n; ++i) inv_diag[i] = d[i] > 0.0 ? 1.0 / d[i] : 1.0;
  }

  Vector r(n), z(n), p(n), q(n);
  int it = 0;
  // Outer restarts re-seed from the true residual; the inner loop runs the
  // usual recurrence until its residual estimate meets the target.
  for (int restart = 0; restart < 5 && it < opts.max_iterations; ++restart) {
    a.multiply(res.x, q, exec);
    r = b - q;
    if (opts.constant_kernel) remove_mean(r, exec);
    double rnorm = std::sqrt(dot(r, r, exec));
    if (rnorm <= target) break;
    z = inv_diag.cwiseProduct(r);
    p = z;
    double rz = dot(r, z, exec);
    while (it < opts.max_iterations) {
      a.multiply(p, q, exec);
      const double pq = dot(p, q, exec);
      if (!(pq > 0.0)) break;
      const double alpha = rz / pq;
      parallel_for(
          static_cast<std::size_t>(n),
          [&](std::size_t k) {
            const auto i = static_cast<Eigen::Index>(k);
            res.x[i] += alpha * p[i];
            r[i] -= alpha * q[i];
          },
          exec);
      ++it;
      if (opts.constant_kernel) remove_mean(r, exec);
      rnorm = std::sqrt(dot(r, r, exec));
      if (rnorm <= 0.5 * target) break;
      z = inv_diag.cwiseProduct(r);
      const double rz_new = dot(r, z, exec);
      const double beta = rz_new / rz;
      rz = rz_new;
      parallel_for(
          static_cast<std::size_t>(n),
          [&](std::size_t k) {
            const auto i = static_cast<Eigen::Index>(k);
            p[i] = z[i] + beta * p[i];
          },
          exec);
    }
  }
  a.multiply(res.x, q, exec);
  r = b - q;
  res.residual_norm = std::sqrt(dot(r, r, exec));
  res.iterations = it;
  if (!(res.residual_norm <= target)) {
    std::ostringstream os;
    os << "conjugate gradients stopped after " << it << " iterations with relative residual "
       << res.residual_norm / res.rhs_norm;
    throw SolverError(os.str(), res.residual_norm, it);
  }
  return res;
}

}  // namespace grl::greensolve
