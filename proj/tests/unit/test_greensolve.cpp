#include <catch_amalgamated.hpp>

#include <cmath>
#include <array>
#include <map>
#include <random>

#include "grl/error.hpp"
#include "grl/geometry/generators.hpp"
#include "grl/greensolve/green.hpp"
#include "grl/greensolve/laplace.hpp"

using namespace grl;
using namespace grl::greensolve;
using geometry::TriMesh;

namespace {

struct Solved {
  TriMesh mesh;
  LaplaceOperator op;
  GreenField g;
};

Solved solve_on(const TriMesh& mesh, int p) {
  Solved s{mesh, assemble(mesh), {}};
  s.g = solve_green(s.op, s.mesh, p);
  return s;
}

const double kSphereConstant = (std::log(2.0) - 0.5) / (2.0 * kPi);

}  // namespace

TEST_CASE("stiffness structure", "[greensolve]") {
  const auto mesh = geometry::gen_icosphere(3, Vec3(0, 0, 1), 1.0);
  const auto op = assemble(mesh);
  const int n = op.stiffness.rows;
  Vector ones = Vector::Ones(n), y;
  op.stiffness.multiply(ones, y);
  double scale = 0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(op.stiffness.at(i, i)));
  CHECK(y.cwiseAbs().maxCoeff() <= 1e-12 * scale);

  for (int i = 0; i < n; ++i)
    for (int k = op.stiffness.row_ptr[i]; k < op.stiffness.row_ptr[i + 1]; ++k) {
      const int j = op.stiffness.col[k];
      CHECK(op.stiffness.val[k] == op.stiffness.at(j, i));
    }
  CHECK(std::abs(op.mass.sum() - geometry::total_area(mesh)) <= 1e-10 * op.mass.sum());
  CHECK(op.mass.minCoeff() > 0.0);

  // Positive semidefinite: x^T S x >= 0 on random vectors.
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < 5; ++t) {
    Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = gauss(rng);
    op.stiffness.multiply(x, y);
    CHECK(x.dot(y) >= 0.0);
  }
}

TEST_CASE("first nonzero eigenvalue of the unit sphere", "[greensolve]") {
  const auto op = assemble(geometry::unit_icosphere(4));
  const double lambda = smallest_nonzero_eigenvalue(op);
  CHECK(std::abs(lambda - 2.0) <= 0.2);
}

TEST_CASE("Green function gauge, symmetry and identity", "[greensolve]") {
  const auto s = solve_on(geometry::unit_icosphere(3), 1);
  const double area = s.op.area();
  CHECK(std::abs(s.op.mass.dot(s.g.values)) <= 1e-9 * area);
  CHECK(s.g.relative_residual <= 1e-10);

  SECTION("values are invariant under the fivefold rotation about the source") {
    // Equal distance alone is not enough: distinct orbits can share a shell.
    const Vec3 p = s.mesh.vertices[1];
    const Mat3 rot = Eigen::AngleAxisd(2 * kPi / 5, p.normalized()).toRotationMatrix();
    std::map<std::array<long long, 3>, std::size_t> index;
    auto key = [](const Vec3& v) {
      return std::array<long long, 3>{std::llround(v.x() * 1e8), std::llround(v.y() * 1e8), std::llround(v.z() * 1e8)};
    };
    for (std::size_t i = 0; i < s.mesh.vertex_count(); ++i) index[key(s.mesh.vertices[i])] = i;
    std::size_t matched = 0;
    for (std::size_t i = 0; i < s.mesh.vertex_count(); ++i) {
      const auto it = index.find(key(rot * s.mesh.vertices[i]));
      if (it == index.end()) continue;
      ++matched;
      CHECK(std::abs(s.g.values[static_cast<Eigen::Index>(i)] - s.g.values[static_cast<Eigen::Index>(it->second)]) <= 1e-8);
    }
    CHECK(matched == s.mesh.vertex_count());
  }

  SECTION("discrete Green identity") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss;
    const Eigen::Index n = s.op.mass.size();
    Vector rhs = -s.op.mass / area;
    rhs[1] += 1.0;
    for (int t = 0; t < 10; ++t) {
      Vector f(n);
      for (Eigen::Index i = 0; i < n; ++i) f[i] = gauss(rng);
      f.array() -= s.op.mass.dot(f) / area;
      CHECK(std::abs(f.dot(rhs) - f[1]) <= 1e-12 * f.cwiseAbs().maxCoeff() * n);
    }
  }
}

TEST_CASE("logarithmic fit on the area-4pi sphere", "[greensolve]") {
  const auto mesh = geometry::rescale_to_area(geometry::gen_icosphere(5, Vec3(0, 0, 1), 1.0));
  const auto s = solve_on(mesh, *mesh.basepoint);
  const auto fit = fit_log_constant(s.g, s.mesh, s.op.mass);
  CHECK(std::abs(fit.c - kSphereConstant) <= 2e-2);
  CHECK(fit.excluded_count < fit.vertex_count / 10);
  CHECK(fit.area == Catch::Approx(kFourPi).epsilon(1e-10));

  SECTION("gauge independence") {
    GreenField shifted = s.g;
    shifted.values.array() += 0.37;
    const auto f2 = fit_log_constant(shifted, s.mesh, s.op.mass);
    CHECK(std::abs(f2.c - fit.c - 0.37) <= 1e-12);
    CHECK(std::abs(f2.max_residual - fit.max_residual) <= 1e-12);
    CHECK(std::abs(f2.rms_residual - fit.rms_residual) <= 1e-12);
  }
  SECTION("exclusion covering the mesh") {
    CHECK_THROWS_AS(fit_log_constant(s.g, s.mesh, s.op.mass, 10.0), Error);
    CHECK_THROWS_AS(fit_log_constant(s.g, s.mesh, s.op.mass, 0.0), Error);
  }
}

TEST_CASE("refinement and ellipsoid separation", "[greensolve]") {
  auto fit_at = [](const TriMesh& raw) {
    const auto mesh = geometry::rescale_to_area(raw);
    const auto s = solve_on(mesh, *mesh.basepoint);
    return fit_log_constant(s.g, s.mesh, s.op.mass);
  };
  const auto s3 = fit_at(geometry::gen_icosphere(3, Vec3(0, 0, 1), 1.0));
  const auto s4 = fit_at(geometry::gen_icosphere(4, Vec3(0, 0, 1), 1.0));
  CHECK(s3.max_residual / s4.max_residual >= 2.0);

  const auto e4 = fit_at(geometry::mesh_surface(geometry::ParamSurface::ellipsoid(Vec3(0, 0, 1.5), Vec3(1, 1, 1.5)), 4));
  CHECK(e4.max_residual >= 5.0 * s4.max_residual);
}

TEST_CASE("solver determinism and failure", "[greensolve]") {
  const auto mesh = geometry::gen_icosphere(3, Vec3(0, 0, 1), 1.0);
  const auto a = solve_on(mesh, *mesh.basepoint);
  const auto b = solve_on(mesh, *mesh.basepoint);
  CHECK((a.g.values.array() == b.g.values.array()).all());

  GreenOptions tight;
  tight.max_iterations = 3;
  CHECK_THROWS_AS(solve_green(a.op, mesh, 0, tight), SolverError);
  CHECK_THROWS_AS(solve_green(a.op, mesh, -1), Error);
}
