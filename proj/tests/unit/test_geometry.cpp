#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

#include "grl/error.hpp"
#include "grl/geometry/generators.hpp"
#include "grl/geometry/measure.hpp"
#include "grl/geometry/mesh_io.hpp"
#include "grl/geometry/param_surface.hpp"
#include "kinds.hpp"

using namespace grl;
using namespace grl::geometry;
using Catch::Matchers::ContainsSubstring;

namespace {

// The valence-5 vertices of an icosphere carry a fixed barycentric-area bias.
std::vector<int> valences(const TriMesh& m) {
  std::vector<int> v(m.vertex_count(), 0);
  for (const auto& f : m.faces)
    for (int i : f) ++v[i];
  return v;
}

}  // namespace

TEST_CASE("icosphere combinatorics", "[geometry]") {
  const auto m0 = gen_icosphere(0, Vec3::Zero(), 1.0);
  CHECK(m0.vertex_count() == 12);
  CHECK(m0.face_count() == 20);
  CHECK_FALSE(m0.basepoint.has_value());

  const auto m3 = gen_icosphere(3, Vec3(0, 0, 1), 1.0);
  CHECK(m3.vertex_count() == 642);
  REQUIRE(m3.basepoint.has_value());
  CHECK(m3.vertices[*m3.basepoint] == Vec3::Zero());
  for (int level = 0; level <= 4; ++level) {
    const auto m = unit_icosphere(level);
    CHECK(m.vertex_count() == 10u * (1u << (2 * level)) + 2);
    REQUIRE_NOTHROW(validate(m));
  }
  CHECK(kind_of([] { gen_icosphere(9, Vec3::Zero(), 1.0); }) == ErrorKind::Size);
}

TEST_CASE("level-2 icosphere area is within 3% of 4pi", "[geometry]") {
  const double a = total_area(gen_icosphere(2, Vec3(0, 0, 1), 1.0));
  CHECK(std::abs(a - kFourPi) / kFourPi < 0.03);
}

TEST_CASE("rescale_to_area", "[geometry]") {
  SECTION("unit sphere level 5 scale factor near 1") {
    const auto m = unit_icosphere(5);
    const auto r = rescale_to_area(m);
    const double factor = r.vertices[0].norm() / m.vertices[0].norm();
    CHECK(std::abs(factor - 1.0) < 2e-3);
    CHECK(std::abs(total_area(r) - kFourPi) <= 1e-10 * kFourPi);
  }
  SECTION("radius-2 sphere through the origin halves") {
    const auto m = gen_icosphere(3, Vec3(0, 0, 2), 2.0);
    const double exact_ratio = std::sqrt(kFourPi / total_area(m));
    const auto r = rescale_to_area(m);
    CHECK(std::abs(exact_ratio - 0.5) < 0.01);
    CHECK(r.vertices[*r.basepoint] == Vec3::Zero());
    CHECK((r.vertices[7] - exact_ratio * m.vertices[7]).norm() <= 1e-14);
  }
  SECTION("fixed point") {
    const auto m = rescale_to_area(unit_icosphere(2));
    const auto r = rescale_to_area(m);
    for (std::size_t i = 0; i < m.vertex_count(); ++i) CHECK((r.vertices[i] - m.vertices[i]).norm() <= 1e-12);
  }
  SECTION("degenerate") {
    TriMesh flat = unit_icosphere(0);
    for (auto& v : flat.vertices) v.setZero();
    CHECK(kind_of([&] { rescale_to_area(flat); }) == ErrorKind::DegenerateInput);
  }
}

TEST_CASE("vertex geometry on icospheres", "[geometry]") {
  const auto m = unit_icosphere(5);
  const auto vg = vertex_geometry(m);
  const auto val = valences(m);
  double eh6 = 0, ek6 = 0;
  for (std::size_t i = 0; i < m.vertex_count(); ++i) {
    const auto& s = vg.samples[i];
    CHECK(std::abs(s.normal.norm() - 1.0) <= 1e-12);
    CHECK(s.normal.dot(s.point) > 0.0);
    if (val[i] == 6) {
      eh6 = std::max(eh6, std::abs(s.mean_curvature - 2.0));
      ek6 = std::max(ek6, std::abs(s.gauss_curvature - 1.0));
    } else {
      // Twelve valence-5 vertices: the barycentric/Voronoi area ratio
      // tends to (cot 54 / 4) / (sin 72 / 6) = 1.1459.
      CHECK(val[i] == 5);
      const double limit = (1.0 / std::tan(54.0 * kPi / 180.0) / 4.0) / (std::sin(72.0 * kPi / 180.0) / 6.0);
      CHECK(std::abs(s.gauss_curvature - limit) < 5e-3);
      CHECK(std::abs(s.mean_curvature - 2.0 * limit) < 1e-2);
    }
  }
  CHECK(eh6 <= 0.05);
  CHECK(ek6 <= 0.05);

  SECTION("radius 2 scaling") {
    TriMesh big = m;
    for (auto& v : big.vertices) v *= 2.0;
    const auto g2 = vertex_geometry(big);
    for (std::size_t i = 0; i < m.vertex_count(); ++i) {
      if (val[i] != 6) continue;
      CHECK(std::abs(g2.samples[i].mean_curvature - 1.0) <= 0.05);
      CHECK(std::abs(g2.samples[i].gauss_curvature - 0.25) <= 0.05 * 0.25);
    }
  }
}

// The sup of the angle-defect error stalls near 2.5e-3 from level 4 on (the
// vertices next to the twelve valence-5 ones are never regular), so K is
// tracked in rms.
TEST_CASE("curvature error decreases from level 3 to 6 on valence-6 vertices", "[geometry]") {
  double prev_h = 1e9, prev_k = 1e9;
  for (int level = 3; level <= 6; ++level) {
    const auto m = unit_icosphere(level);
    const auto vg = vertex_geometry(m);
    const auto val = valences(m);
    double eh = 0, sk = 0;
    int n = 0;
    for (std::size_t i = 0; i < m.vertex_count(); ++i) {
      if (val[i] != 6) continue;
      eh = std::max(eh, std::abs(vg.samples[i].mean_curvature - 2.0));
      const double e = vg.samples[i].gauss_curvature - 1.0;
      sk += e * e;
      ++n;
    }
    const double ek = std::sqrt(sk / n);
    CHECK(eh < prev_h);
    CHECK(ek < 0.6 * prev_k);
    prev_h = eh;
    prev_k = ek;
  }
}

TEST_CASE("Gauss-Bonnet", "[geometry]") {
  for (const auto& m : {unit_icosphere(3), gen_icosphere(4, Vec3(0, 0, 1), 1.0),
                        mesh_surface(ParamSurface::ellipsoid(Vec3(0, 0, 1.5), Vec3(1, 1, 1.5)), 3)}) {
    const auto vg = vertex_geometry(m);
    double total = 0;
    for (double d : vg.angle_defect) total += d;
    CHECK(std::abs(total - kFourPi) <= 1e-10);
  }
}

TEST_CASE("vertex geometry is rotation invariant", "[geometry]") {
  const auto m = gen_icosphere(3, Vec3(0, 0, 1), 1.0);
  const Mat3 r = Eigen::AngleAxisd(0.7, Vec3(1, 2, -0.5).normalized()).toRotationMatrix();
  TriMesh rm = m;
  for (auto& v : rm.vertices) v = r * v;
  const auto a = vertex_geometry(m), b = vertex_geometry(rm);
  for (std::size_t i = 0; i < m.vertex_count(); ++i) {
    CHECK((r * a.samples[i].normal - b.samples[i].normal).norm() <= 1e-12);
    CHECK(std::abs(a.samples[i].mean_curvature - b.samples[i].mean_curvature) <= 1e-12);
    CHECK(std::abs(a.samples[i].gauss_curvature - b.samples[i].gauss_curvature) <= 1e-12);
    REQUIRE(a.samples[i].support_quotient.has_value() == b.samples[i].support_quotient.has_value());
    if (a.samples[i].support_quotient)
      CHECK(std::abs(*a.samples[i].support_quotient - *b.samples[i].support_quotient) <= 1e-12);
  }
}

TEST_CASE("basepoint and one-ring are excluded", "[geometry]") {
  const auto m = gen_icosphere(3, Vec3(0, 0, 1), 1.0);
  const auto vg = vertex_geometry(m);
  CHECK_FALSE(vg.samples[*m.basepoint].support_quotient.has_value());
  for (int v : one_ring(m, *m.basepoint)) CHECK_FALSE(vg.samples[v].support_quotient.has_value());
}

TEST_CASE("star shape check", "[geometry]") {
  SECTION("sphere through origin") {
    const auto rep = star_shape_check(gen_icosphere(4, Vec3(0, 0, 1), 1.0));
    CHECK(rep.sign_consistent);
    CHECK(rep.min_support > 0.0);
  }
  SECTION("no basepoint") {
    CHECK(kind_of([] { star_shape_check(unit_icosphere(2)); }) == ErrorKind::Configuration);
  }
  SECTION("dumbbell") {
    // Two lobes along x joined by a thin neck; the inner faces of the lobes
    // look away from the basepoint under the neck.
    const auto m = mesh_radial(4, [](const Vec3& w) {
      const double x2 = w.x() * w.x();
      return 0.25 + 2.0 * x2 * x2;
    });
    REQUIRE(m.basepoint.has_value());
    CHECK_FALSE(star_shape_check(m).sign_consistent);
  }
}

TEST_CASE("closed-form samples", "[geometry]") {
  const auto s = ParamSurface::sphere(Vec3(0, 0, 1), 1.0);
  const auto g = sample_at(s, Vec3(1, 0, 1));
  CHECK(g.mean_curvature == 2.0);
  CHECK(g.gauss_curvature == 1.0);
  REQUIRE(g.support_quotient.has_value());
  CHECK(*g.support_quotient == Catch::Approx(0.5).epsilon(1e-15));
  CHECK_FALSE(sample_at(s, Vec3::Zero()).support_quotient.has_value());

  const auto e = ParamSurface::ellipsoid(Vec3(0, 0, 2), Vec3(1, 2, 2));
  for (const Vec3& y : e.sample_grid(7, 9)) CHECK(std::abs(e.normal(y).norm() - 1.0) <= 1e-12);
  CHECK(kind_of([] { ParamSurface::sphere(Vec3::Zero(), 0.0); }) == ErrorKind::Input);
  CHECK(kind_of([] { ParamSurface::ellipsoid(Vec3::Zero(), Vec3(1, -1, 1)); }) == ErrorKind::Input);
}

TEST_CASE("OFF round trip and validation", "[geometry][io]") {
  const auto m = gen_icosphere(2, Vec3(0, 0, 1), 1.0);
  std::stringstream ss;
  write_off(m, ss);
  const auto back = read_off(ss);
  REQUIRE(back.vertex_count() == m.vertex_count());
  for (std::size_t i = 0; i < m.vertex_count(); ++i) CHECK(back.vertices[i] == m.vertices[i]);
  CHECK(back.faces == m.faces);
  CHECK(back.basepoint == m.basepoint);

  SECTION("edge shared by three faces") {
    std::stringstream bad("OFF\n5 6 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n1 1 1\n"
                          "3 0 1 2\n3 0 2 3\n3 0 3 1\n3 1 3 2\n3 0 1 4\n3 1 0 4\n");
    try {
      read_off(bad);
      FAIL("accepted a non-manifold edge");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Validation);
      CHECK_THAT(std::string(e.what()), ContainsSubstring("edge"));
    }
  }
  SECTION("no faces") {
    std::stringstream bad("OFF\n3 0 0\n0 0 0\n1 0 0\n0 1 0\n");
    CHECK(kind_of([&] { read_off(bad); }) == ErrorKind::Validation);
  }
  SECTION("open mesh") {
    std::stringstream bad("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n");
    CHECK(kind_of([&] { read_off(bad); }) == ErrorKind::Validation);
  }
  SECTION("obj quads rejected") {
    std::stringstream obj("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n");
    CHECK(kind_of([&] { read_obj(obj); }) == ErrorKind::Validation);
  }
}

TEST_CASE("OBJ import matches OFF", "[geometry][io]") {
  const auto m = unit_icosphere(1);
  std::stringstream obj;
  obj.precision(17);
  for (const auto& v : m.vertices) obj << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const auto& f : m.faces) obj << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  const auto back = read_obj(obj);
  CHECK(back.faces == m.faces);
  for (std::size_t i = 0; i < m.vertex_count(); ++i) CHECK(back.vertices[i] == m.vertices[i]);
}
