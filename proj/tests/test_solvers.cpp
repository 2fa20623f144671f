#include "doctest.h"

#include "fixtures.hpp"
#include "oracles.hpp"
#include "sv/solvers.hpp"

#include <fstream>
#include <random>

using namespace sv;

namespace {

TriangleMesh unit_square() { return fixtures::grid_mesh(2, 2); }

Site point_site(const TriangleMesh& mesh, const Vec3& p, Scalar w = 0) {
  return fixtures::site_at(mesh, 0, p, w);
}

}  // namespace

TEST_CASE("euclidean squared distance: 3-4-5") {
  std::vector<Vec3> verts = {{0, 0, 0}, {10, 0, 0}, {0, 10, 0}};
  const TriangleMesh mesh = build_mesh(std::move(verts), {{0, 1, 2}});
  Site s;
  s.id = 0;
  s.face = 0;
  s.bary = Vec3(1, 0, 0);  // at (0,0,0)
  SolverConfig cfg;
  CHECK(squared_distance(cfg, s, Vec3(3, 4, 0), mesh) == doctest::Approx(25.0).epsilon(1e-15));

  SUBCASE("power flag subtracts the weight") {
    s.weight = 25;
    cfg.power = true;
    CHECK(squared_distance(cfg, s, Vec3(3, 4, 0), mesh) == doctest::Approx(0.0));
  }
}

TEST_CASE("curve site: point-to-segment squared distance") {
  const TriangleMesh mesh = unit_square();
  Site s;
  s.id = 0;
  s.kind = Site::Kind::Curve;
  s.polyline = {{0, 0, 0}, {1, 0, 0}};
  SolverConfig cfg;
  CHECK(squared_distance(cfg, s, Vec3(0.5, 2, 0), mesh) == doctest::Approx(4.0));
}

TEST_CASE("point_to_curve_distance") {
  const std::vector<Vec3> curve = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}};
  CHECK(point_to_curve_distance(curve, Vec3(2, 0, 0)) == doctest::Approx(1.0));
  CHECK(point_to_curve_distance(curve, Vec3(1, 0.5, 0)) == doctest::Approx(0.0));

  SUBCASE("random polylines match the dense sampling oracle") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<Scalar> uni(-2, 2);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Vec3> poly;
      const int n = 2 + trial % 4;
      for (int i = 0; i < n; ++i) poly.emplace_back(uni(rng), uni(rng), uni(rng));
      const Vec3 q(uni(rng), uni(rng), uni(rng));
      const Scalar exact = point_to_curve_distance(poly, q);
      const Scalar sampled = oracles::sampled_curve_distance(poly, q);
      CHECK(std::abs(exact - sampled) < 1e-6);
    }
  }
}

TEST_CASE("density distance") {
  DensityField field;
  field.quadrature_samples = 8;

  SUBCASE("identity field reproduces Euclidean length") {
    field.evaluator = [](const Vec3&) { return 1.0; };
    CHECK(density_distance(Vec3(0, 0, 0), Vec3(3, 4, 0), field) == doctest::Approx(5.0));
  }
  SUBCASE("linear field, exact for Simpson") {
    field.evaluator = [](const Vec3& q) { return q.x(); };
    // rho((1-t)v + tp) = 1-t along v=(1,0,0) -> p=(0,0,0)
    CHECK(density_distance(Vec3(0, 0, 0), Vec3(1, 0, 0), field) == doctest::Approx(0.5).epsilon(1e-14));
  }
  SUBCASE("exponential field vs adaptive quadrature") {
    field.evaluator = [](const Vec3& q) { return std::exp(q.x()); };
    field.quadrature_samples = 16;
    const Scalar got = density_distance(Vec3(1, 0, 0), Vec3(0, 0, 0), field);
    const Scalar want = oracles::integrate01([](Scalar t) { return std::exp(t); });
    CHECK(std::abs(got - want) < 1e-6);
    CHECK(want == doctest::Approx(std::exp(1.0) - 1).epsilon(1e-10));
  }
  SUBCASE("nonpositive density rejected") {
    field.evaluator = [](const Vec3& q) { return q.x() - 0.5; };
    CHECK_THROWS_AS(density_distance(Vec3(0, 0, 0), Vec3(1, 0, 0), field), NonpositiveDensity);
  }
  SUBCASE("constant density scales exactly") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<Scalar> uni(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
      const Vec3 p(uni(rng), uni(rng), uni(rng)), v(uni(rng), uni(rng), uni(rng));
      const Scalar c = 0.25 + std::abs(uni(rng));
      DensityField fc;
      fc.evaluator = [c](const Vec3&) { return c; };
      DensityField f1;
      f1.evaluator = [](const Vec3&) { return 1.0; };
      CHECK(density_distance(p, v, fc) == doctest::Approx(c * density_distance(p, v, f1)).epsilon(1e-14));
    }
  }
}

TEST_CASE("euclidean solver invariants") {
  const TriangleMesh mesh = unit_square();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<Scalar> uni(0, 1);
  SolverConfig plain;
  SolverConfig power;
  power.power = true;
  for (int trial = 0; trial < 100; ++trial) {
    const Vec3 q(uni(rng), uni(rng), uni(rng));
    Site s = point_site(mesh, Vec3(uni(rng), uni(rng), 0));
    const Vec3 p = s.position(mesh);
    const Scalar reference = (q - p).squaredNorm();
    const Scalar got = squared_distance(plain, s, q, mesh);
    CHECK(got == doctest::Approx(reference).epsilon(1e-15));

    s.weight = uni(rng) * 4 - 2;
    const Scalar shifted = squared_distance(power, s, q, mesh);
    CHECK(shifted == doctest::Approx(got - s.weight).epsilon(1e-12));
  }
}

TEST_CASE("density only combines with euclidean") {
  SolverConfig cfg;
  cfg.kind = DistanceKind::FastMarching;
  cfg.density = DensityField{[](const Vec3&) { return 1.0; }, 8};
  CHECK_THROWS(cfg.validate());
}

TEST_CASE("fmm_update: planar wavefront is exact") {
  // right isoceles triangle: a=(0,0), b=(1,0), c=(0,1); source at s=(1.5,-1)
  const Vec2 a(0, 0), b(1, 0), c(0, 1);
  const Vec2 s(0.4, -0.8);
  const Scalar da = (a - s).norm(), db = (b - s).norm();
  const Scalar d3 = fmm_update(a, b, c, da, db);
  CHECK(d3 == doctest::Approx((c - s).norm()).epsilon(1e-9));
}

TEST_CASE("fmm_update: zero distance at adjacent vertex bounded by edge length") {
  const Vec2 a(0, 0), b(1, 0), c(0.3, 0.9);
  const Scalar d3 = fmm_update(a, b, c, 0, (b - a).norm());
  CHECK(d3 <= (c - a).norm() + 1e-12);
  CHECK(d3 >= 0);
}

TEST_CASE("fmm_update: invalid configurations fall back to Dijkstra") {
  const Vec2 a(0, 0), b(1, 0), c(0.5, 0.5);
  // impossible circle intersection (|da - db| > |ab|)
  const Scalar d3 = fmm_update(a, b, c, 10.0, 1.0);
  CHECK(d3 == doctest::Approx(std::min(10 + (c - a).norm(), 1 + (c - b).norm())));
}

TEST_CASE("sites file round trip and validation") {
  const TriangleMesh mesh = unit_square();
  SiteSet set;
  Site p = point_site(mesh, Vec3(0.3, 0.4, 0), 1.5);
  p.id = 0;
  set.sites.push_back(p);
  Site c;
  c.id = 1;
  c.kind = Site::Kind::Curve;
  c.polyline = {{0.1, 0.1, 0}, {0.9, 0.2, 0}, {0.9, 0.9, 0}};
  set.sites.push_back(c);
  save_sites("/tmp/sites.txt", set);
  const SiteSet again = load_sites("/tmp/sites.txt", mesh);
  REQUIRE(again.size() == 2);
  CHECK(again.sites[0].weight == doctest::Approx(1.5));
  CHECK(again.sites[0].face == p.face);
  CHECK(again.sites[1].polyline.size() == 3);
  CHECK(again.any_nonzero_weight());

  std::ofstream("/tmp/bad_sites.txt") << "p 999 0.3 0.3 0.4\n";
  CHECK_THROWS_AS(load_sites("/tmp/bad_sites.txt", mesh), ParseError);
  std::ofstream("/tmp/neg_bary.txt") << "p 0 -0.5 0.75 0.75\n";
  CHECK_THROWS_AS(load_sites("/tmp/neg_bary.txt", mesh), ParseError);
  std::ofstream("/tmp/empty_sites.txt") << "# nothing\n";
  CHECK_THROWS_AS(load_sites("/tmp/empty_sites.txt", mesh), EmptySiteSet);
}

TEST_CASE("built-in density specs") {
  const DensityField c = make_density("constant:2.5");
  CHECK(c.evaluator(Vec3(1, 2, 3)) == doctest::Approx(2.5));
  const DensityField l = make_density("linear:x:2:1");
  CHECK(l.evaluator(Vec3(3, 0, 0)) == doctest::Approx(7.0));
  const DensityField r = make_density("radial:1:0.5");
  CHECK(r.evaluator(Vec3(0, 3, 4)) == doctest::Approx(5.5));
  CHECK_THROWS_AS(make_density("bogus"), ParseError);
}
