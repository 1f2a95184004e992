#include "grl/geometry/param_surface.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "grl/error.hpp"

namespace grl::geometry {

ParamSurface::ParamSurface(Kind kind, const Vec3& center, const Vec3& semiaxes)
    : kind_(kind), center_(center), semiaxes_(semiaxes) {
  if (!(semiaxes.minCoeff() > 0.0) || !semiaxes.allFinite())
    throw Error(ErrorKind::Input, "radius and semiaxes must be strictly positive");
  if (!center.allFinite()) throw Error(ErrorKind::Input, "center must be finite");
}

ParamSurface ParamSurface::sphere(const Vec3& center, double radius) {
  return ParamSurface(Kind::Sphere, center, Vec3::Constant(radius));
}

ParamSurface ParamSurface::ellipsoid(const Vec3& center, const Vec3& semiaxes) {
  return ParamSurface(Kind::Ellipsoid, center, semiaxes);
}

std::string ParamSurface::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (kind_ == Kind::Sphere) {
    os << "sphere(center=" << center_.x() << "," << center_.y() << "," << center_.z()
       << ";radius=" << semiaxes_.x() << ")";
  } else {
    os << "ellipsoid(center=" << center_.x() << "," << center_.y() << "," << center_.z()
       << ";semiaxes=" << semiaxes_.x() << "," << semiaxes_.y() << "," << semiaxes_.z() << ")";
  }
  return os.str();
}

Vec3 ParamSurface::point(double u, double v) const {
  return from_unit(Vec3(std::sin(u) * std::cos(v), std::sin(u) * std::sin(v), std::cos(u)));
}

double ParamSurface::implicit(const Vec3& y) const { return to_unit(y).squaredNorm() - 1.0; }

Vec3 ParamSurface::implicit_gradient(const Vec3& y) const {
  return 2.0 * (y - center_).cwiseQuotient(semiaxes_.cwiseProduct(semiaxes_));
}

Mat3 ParamSurface::implicit_hessian() const {
  return (2.0 * semiaxes_.cwiseProduct(semiaxes_).cwiseInverse()).asDiagonal();
}

Vec3 ParamSurface::normal(const Vec3& y) const {
  if (kind_ == Kind::Sphere) return (y - center_) / semiaxes_.x();
  return implicit_gradient(y).normalized();
}

std::pair<Vec3, Vec3> tangent_basis(const Vec3& n) {
  const Vec3 axis = std::abs(n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 t1 = (axis - axis.dot(n) * n).normalized();
  return {t1, n.cross(t1)};
}

SurfaceFrame ParamSurface::frame(const Vec3& y) const {
  SurfaceFrame fr;
  fr.normal = normal(y);
  const auto [t1, t2] = tangent_basis(fr.normal);
  if (kind_ == Kind::Sphere) {
    const double r = semiaxes_.x();
    fr.mean_curvature = 2.0 / r;
    fr.gauss_curvature = 1.0 / (r * r);
    fr.k1 = fr.k2 = 1.0 / r;
    fr.dir1 = t1;
    fr.dir2 = t2;
    return fr;
  }
  // Shape operator of the level set restricted to the tangent plane.
  const double gnorm = implicit_gradient(y).norm();
  const Mat3 hess = implicit_hessian();
  Mat2 s;
  s(0, 0) = t1.dot(hess * t1) / gnorm;
  s(0, 1) = s(1, 0) = t1.dot(hess * t2) / gnorm;
  s(1, 1) = t2.dot(hess * t2) / gnorm;
  fr.mean_curvature = s.trace();
  fr.gauss_curvature = s.determinant();
  Eigen::SelfAdjointEigenSolver<Mat2> eig(s);
  const Vec2 evals = eig.eigenvalues();  // ascending
  fr.k1 = evals(1);
  fr.k2 = evals(0);
  if (std::abs(evals(1) - evals(0)) <= 1e-12 * std::abs(evals(1))) {
    fr.dir1 = t1;
    fr.dir2 = t2;
  } else {
    const Mat2 vecs = eig.eigenvectors();
    fr.dir1 = (vecs(0, 1) * t1 + vecs(1, 1) * t2).normalized();
    fr.dir2 = (vecs(0, 0) * t1 + vecs(1, 0) * t2).normalized();
  }
  return fr;
}

double ellipsoid_area(const Vec3& semiaxes) {
  std::array<double, 3> s{semiaxes.x(), semiaxes.y(), semiaxes.z()};
  std::sort(s.begin(), s.end(), std::greater<>());
  const double a = s[0], b = s[1], c = s[2];
  if (a - c <= 1e-14 * a) return kFourPi * a * a;
  const double phi = std::acos(c / a);
  const double sin_phi = std::sin(phi);
  const double k2 = (a * a * (b * b - c * c)) / (b * b * (a * a - c * c));
  const double k = std::sqrt(std::clamp(k2, 0.0, 1.0));
  const double e_int = std::ellint_2(k, phi);
  // F(1, phi) = atanh(sin phi); handled directly to stay off the k = 1 edge.
  const double f_int = k >= 1.0 ? std::atanh(sin_phi) : std::ellint_1(k, phi);
  return 2.0 * kPi * c * c +
         2.0 * kPi * a * b / sin_phi * (e_int * sin_phi * sin_phi + f_int * (1.0 - sin_phi * sin_phi));
}

double ParamSurface::area() const {
  if (kind_ == Kind::Sphere) return kFourPi * semiaxes_.x() * semiaxes_.x();
  return ellipsoid_area(semiaxes_);
}

ParamSurface ParamSurface::scaled(double factor) const {
  if (!(factor > 0.0)) throw Error(ErrorKind::Input, "scale factor must be positive");
  ParamSurface out = *this;
  out.center_ *= factor;
  out.semiaxes_ *= factor;
  return out;
}

ParamSurface ParamSurface::normalized_area(double target) const {
  return scaled(std::sqrt(target / area()));
}

bool ParamSurface::passes_through_origin(double tol) const {
  return std::abs(to_unit(Vec3::Zero()).norm() - 1.0) <= tol;
}

std::optional<double> ParamSurface::sheet_height(double x, double y) const {
  const Vec3& c = center_;
  const Vec3& s = semiaxes_;
  const double dx = (x - c.x()) / s.x();
  const double dy = (y - c.y()) / s.y();
  const double dx0 = c.x() / s.x();
  const double dy0 = c.y() / s.y();
  // Horizontal offset term relative to the origin's own offset, so that
  // c_z^2 - s_z^2 (1 - E) cancels exactly when the sheet passes through 0.
  const double e = dx * dx + dy * dy;
  const double disc = 1.0 - e;
  if (disc < 0.0) return std::nullopt;
  const double sgn = c.z() >= 0.0 ? 1.0 : -1.0;
  const double denom = c.z() + sgn * s.z() * std::sqrt(disc);
  // numerator: c_z^2 - s_z^2 * disc = s_z^2 (e - e0) + (c_z^2 - s_z^2 (1 - e0))
  const double e0 = dx0 * dx0 + dy0 * dy0;
  const double num = s.z() * s.z() * (e - e0) + (c.z() * c.z() - s.z() * s.z() * (1.0 - e0));
  return num / denom;
}

std::vector<Vec3> ParamSurface::sample_grid(int nu, int nv) const {
  if (nu <= 0 || nv <= 0) throw Error(ErrorKind::Input, "sample grid sizes must be positive");
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(nu) * nv);
  for (int i = 0; i < nu; ++i) {
    const double u = (i + 0.5) * kPi / nu;
    for (int j = 0; j < nv; ++j) pts.push_back(point(u, 2.0 * kPi * j / nv));
  }
  return pts;
}

}  // namespace grl::geometry
