#include "grl/kelvin/kelvin.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "grl/error.hpp"

namespace grl::kelvin {

using geometry::ParamSurface;

Vec3 kelvin_point(const Vec3& y) {
  const double n2 = y.squaredNorm();
  if (!(std::sqrt(n2) > kPointThreshold)) throw Error(ErrorKind::Singularity, "Kelvin transform of the origin");
  return y / n2;
}

Mat3 kelvin_jacobian(const Vec3& y) {
  const double n2 = y.squaredNorm();
  if (!(std::sqrt(n2) > kPointThreshold)) throw Error(ErrorKind::Singularity, "Kelvin transform of the origin");
  return (Mat3::Identity() - 2.0 * y * y.transpose() / n2) / n2;
}

ConformalReport conformal_factor_check(const ParamSurface& surface, const std::vector<Vec3>& samples, Exec exec) {
  for (const Vec3& y : samples)
    if (!(y.norm() >= kConformalExclusion)) throw Error(ErrorKind::Singularity, "sample within 1e-3 of the origin");
  ConformalReport rep;
  rep.samples.resize(samples.size());
  parallel_for(
      samples.size(),
      [&](std::size_t i) {
        const Vec3& y = samples[i];
        const auto [t1, t2] = geometry::tangent_basis(surface.normal(y));
        const Mat3 J = kelvin_jacobian(y);
        Eigen::Matrix<double, 3, 2> T;
        T << t1, t2;
        const Eigen::Matrix<double, 3, 2> JT = J * T;
        const Mat2 gram = JT.transpose() * JT;
        const double n2 = y.squaredNorm();
        const double factor = 1.0 / (n2 * n2);
        ConformalSample& s = rep.samples[i];
        s.point = y;
        s.factor = factor;
        s.gap = (gram - factor * Mat2::Identity()).cwiseAbs().maxCoeff() / factor;
      },
      exec);
  for (const auto& s : rep.samples) rep.max_gap = std::max(rep.max_gap, s.gap);
  return rep;
}

std::string to_string(CurvatureMethod method) {
  return method == CurvatureMethod::ClosedForm ? "closed-form" : "finite-difference";
}

namespace {

// K of the level set {G = 0} from the bordered Hessian.
double implicit_gauss(const Mat3& hess, const Vec3& grad) {
  Eigen::Matrix4d b = Eigen::Matrix4d::Zero();
  b.topLeftCorner<3, 3>() = hess;
  b.topRightCorner<3, 1>() = grad;
  b.bottomLeftCorner<1, 3>() = grad.transpose();
  const double g2 = grad.squaredNorm();
  return -b.determinant() / (g2 * g2);
}

// G = F o Phi at yt = Phi(q), with F the quadric's implicit function.
double closed_form(const ParamSurface& surface, const Vec3& q) {
  const Vec3 yt = kelvin_point(q);
  const double s = 1.0 / yt.squaredNorm();
  const Mat3 J = kelvin_jacobian(yt);
  const Vec3 gF = surface.implicit_gradient(q);
  const Mat3 hF = surface.implicit_hessian();
  Mat3 hess = J.transpose() * hF * J;
  // d_i d_j Phi_k = -2 s^2 (d_ik y_j + d_jk y_i + d_ij y_k) + 8 s^3 y_i y_j y_k
  const double w = gF.dot(yt);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double v = -2.0 * s * s * (gF(i) * yt(j) + gF(j) * yt(i) + (i == j ? w : 0.0));
      v += 8.0 * s * s * s * yt(i) * yt(j) * w;
      hess(i, j) += v;
    }
  return implicit_gauss(hess, J.transpose() * gF);
}

struct Derivs {
  Vec3 xu, xv, xuu, xuv, xvv;
};

Derivs central(const ParamSurface& surface, double u, double v, double h) {
  auto X = [&](double a, double b) { return kelvin_point(surface.point(a, b)); };
  const Vec3 c = X(u, v);
  const Vec3 up = X(u + h, v), um = X(u - h, v), vp = X(u, v + h), vm = X(u, v - h);
  Derivs d;
  d.xu = (up - um) / (2.0 * h);
  d.xv = (vp - vm) / (2.0 * h);
  d.xuu = (up - 2.0 * c + um) / (h * h);
  d.xvv = (vp - 2.0 * c + vm) / (h * h);
  d.xuv = (X(u + h, v + h) - X(u + h, v - h) - X(u - h, v + h) + X(u - h, v - h)) / (4.0 * h * h);
  return d;
}

double finite_difference(const ParamSurface& surface, const Vec3& q, double h) {
  const Vec3 e = surface.to_unit(q);
  const double u = std::acos(std::clamp(e.z(), -1.0, 1.0));
  const double v = std::atan2(e.y(), e.x());
  if (std::sin(u) < 4.0 * h) throw Error(ErrorKind::Domain, "sample too close to a parameter pole");
  const Derivs a = central(surface, u, v, h);
  const Derivs b = central(surface, u, v, 0.5 * h);
  auto rich = [](const Vec3& coarse, const Vec3& fine) -> Vec3 { return (4.0 * fine - coarse) / 3.0; };
  const Vec3 xu = rich(a.xu, b.xu), xv = rich(a.xv, b.xv);
  const Vec3 n = xu.cross(xv).normalized();
  const double E = xu.dot(xu), F = xu.dot(xv), G = xv.dot(xv);
  const double L = rich(a.xuu, b.xuu).dot(n), M = rich(a.xuv, b.xuv).dot(n), N = rich(a.xvv, b.xvv).dot(n);
  return (L * N - M * M) / (E * G - F * F);
}

}  // namespace

double image_gauss_curvature(const ParamSurface& surface, const Vec3& q, CurvatureMethod method, double fd_step) {
  if (method == CurvatureMethod::ClosedForm) return closed_form(surface, q);
  if (!(fd_step > 0.0 && fd_step <= 0.1)) throw Error(ErrorKind::Input, "finite-difference step must lie in (0, 0.1]");
  return finite_difference(surface, q, fd_step);
}

CorrespondenceReport curvature_correspondence_residual(const ParamSurface& surface, const std::vector<Vec3>& samples,
                                                       CurvatureMethod method, double fd_step, Exec exec) {
  if (!surface.passes_through_origin(1e-12))
    throw Error(ErrorKind::Configuration, "surface does not pass through the origin");
  std::vector<Vec3> kept;
  CorrespondenceReport rep;
  rep.method = method;
  rep.fd_step = method == CurvatureMethod::FiniteDifference ? fd_step : 0.0;
  for (const Vec3& q : samples) {
    if (std::abs(surface.implicit(q)) > 1e-9) throw Error(ErrorKind::Input, "sample is off the surface");
    if (q.norm() < kOriginExclusion) {
      ++rep.skipped;
      continue;
    }
    kept.push_back(q);
  }
  rep.rows.resize(kept.size());
  parallel_for(
      kept.size(),
      [&](std::size_t i) {
        CorrespondenceRow& r = rep.rows[i];
        r.point = kept[i];
        r.image = kelvin_point(r.point);
        r.image_curvature = image_gauss_curvature(surface, r.point, method, fd_step);
        r.surface_curvature = surface.frame(r.point).gauss_curvature;
        const double q2 = r.point.squaredNorm();
        r.rhs = q2 * q2 * (r.surface_curvature - 1.0);
        r.residual = r.image_curvature - r.rhs;
      },
      exec);
  for (const auto& r : rep.rows) rep.max_abs_residual = std::max(rep.max_abs_residual, std::abs(r.residual));
  return rep;
}

std::vector<Vec3> random_points(const ParamSurface& surface, std::size_t count, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<Vec3> out;
  out.reserve(count);
  while (out.size() < count) {
    const Vec3 d(gauss(rng), gauss(rng), gauss(rng));
    const double len = d.norm();
    if (len == 0.0) continue;
    out.push_back(surface.from_unit(d / len));
  }
  return out;
}

}  // namespace grl::kelvin
