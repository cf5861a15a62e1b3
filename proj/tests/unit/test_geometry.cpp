#include <random>

#include "doctest.h"
#include "obstruction_lab/blocked_arc.hpp"
#include "obstruction_lab/errors.hpp"
#include "obstruction_lab/geometry.hpp"
#include "obstruction_lab/point_window.hpp"

using namespace obstruction_lab;

TEST_CASE("point to ray distance") {
  const Ray ray{{0, 0}, Direction(0.0)};
  CHECK(dist_point_ray({3, 4}, ray) == doctest::Approx(4.0));
  CHECK(dist_point_ray({-3, 4}, ray) == doctest::Approx(5.0));
  CHECK(dist_point_ray({0, 0}, Ray{{0, 0}, Direction(1.234)}) == 0.0);
}

TEST_CASE("point to segment distance") {
  const Segment seg({0, 0}, Direction(0.0), 10.0);
  CHECK(dist_point_segment({3, 4}, seg) == doctest::Approx(4.0));
  CHECK(dist_point_segment({12, 0}, seg) == doctest::Approx(2.0));
  CHECK(dist_point_segment({5, 0}, seg) == 0.0);
  CHECK_THROWS_AS(Segment({0, 0}, Direction(0.0), 0.0), LabError);
}

TEST_CASE("direction normalization") {
  CHECK(Direction(-0.5).theta() == doctest::Approx(kTwoPi - 0.5));
  CHECK(Direction(7.0).theta() == doctest::Approx(7.0 - kTwoPi));
  CHECK(Direction(kTwoPi).theta() == 0.0);
  const Point u = Direction(2.0).unit();
  CHECK(std::abs(norm(u) - 1.0) < 1e-12);
  CHECK_THROWS_AS(Direction::of_vector({0, 0}), LabError);
}

TEST_CASE("set to ray distance") {
  const Ray ray{{0, 0}, Direction(0.0)};
  PointWindow a({{1, 0}, {0, 5}}, 10);
  CHECK(dist_set_ray(a, ray) == 0.0);
  PointWindow b({{1, 0}}, 10);
  try {
    dist_set_ray(b, ray, Point{1, 0});
    FAIL("expected EmptySet");
  } catch (const LabError& e) {
    CHECK(e.kind() == ErrorKind::EmptySet);
  }
  PointWindow c({{0, 5}, {0, -5}}, 10);
  CHECK(dist_set_ray(c, ray) == doctest::Approx(5.0));
}

TEST_CASE("window validation") {
  CHECK_THROWS_AS(PointWindow({{3, 4}}, 4.9), LabError);
  CHECK_NOTHROW(PointWindow({{3, 4}}, 5.0));
  CHECK_THROWS_AS(PointWindow({}, 0.0), LabError);
}

TEST_CASE("blocked arc examples") {
  const ArcSet a = blocked_arc({0, 0}, {2, 0}, 1.0, kInfinity);
  CHECK(std::abs(a.measure() - kPi / 3) < 1e-12);
  CHECK(a.contains(0.0));
  CHECK(a.contains(kPi / 6 - 1e-6));
  CHECK_FALSE(a.contains(kPi / 6 + 1e-6));
  CHECK(blocked_arc({0, 0}, {0.3, 0}, 1.0, kInfinity).is_full());
  CHECK(blocked_arc({0, 0}, {5, 0}, 1.0, 3.0).is_empty());
  try {
    blocked_arc({1, 1}, {1, 1 + 1e-12}, 0.5, kInfinity);
    FAIL("expected DegenerateObstacle");
  } catch (const LabError& e) {
    CHECK(e.kind() == ErrorKind::DegenerateObstacle);
  }
}

TEST_CASE("blocked arc empty beyond reach, sampled") {
  int hits = 0;
  for (int i = 0; i < 1000000; ++i) {
    const double th = kTwoPi * i / 1000000.0;
    if (dist_point_ray_unit({5, 0}, {0, 0}, {std::cos(th), std::sin(th)}, 3.0) < 1.0) ++hits;
  }
  CHECK(hits == 0);
}

TEST_CASE("arc width law") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double d = 0.01 + 100.0 * u(rng);
    const double eps = d * (0.001 + 0.998 * u(rng));
    const double th = kTwoPi * u(rng);
    const Point x{u(rng) * 10 - 5, u(rng) * 10 - 5};
    const Point y = x + Point{d * std::cos(th), d * std::sin(th)};
    const ArcSet a = blocked_arc(x, y, eps, kInfinity);
    REQUIRE(std::abs(a.measure() - 2.0 * std::asin(eps / distance(x, y))) < 1e-12);
  }
}

TEST_CASE("distance properties") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 5000; ++i) {
    const Point p{u(rng), u(rng)}, o{u(rng), u(rng)};
    const Direction dir(u(rng));
    const double r = dist_point_ray(p, Ray{o, dir});
    CHECK(r <= distance(p, o));
    const double t1 = 0.1 + std::abs(u(rng)), t2 = t1 + std::abs(u(rng));
    const double d1 = dist_point_segment(p, Segment(o, dir, t1));
    const double d2 = dist_point_segment(p, Segment(o, dir, t2));
    CHECK(d2 <= d1);
    CHECK(r <= d2);
  }
}

TEST_CASE("blocked arc agrees with segment distance") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  long checked = 0;
  for (int inst = 0; inst < 1000; ++inst) {
    const Point x{u(rng) * 20 - 10, u(rng) * 20 - 10};
    const Point y{u(rng) * 20 - 10, u(rng) * 20 - 10};
    const double eps = 0.05 + 3.0 * u(rng);
    const double horizon = u(rng) < 0.2 ? kInfinity : 0.5 + 20.0 * u(rng);
    const ArcSet a = blocked_arc(x, y, eps, horizon);
    for (int s = 0; s < 10000; ++s) {
      const double th = kTwoPi * u(rng);
      const Membership m = a.classify(th);
      if (m == Membership::Boundary) continue;
      const double dist = dist_point_ray_unit(y, x, {std::cos(th), std::sin(th)}, horizon);
      REQUIRE((m == Membership::Inside) == (dist < eps));
      ++checked;
    }
  }
  CHECK(checked > 9900000);
}
