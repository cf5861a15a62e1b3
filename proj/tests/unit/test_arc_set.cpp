#include <random>
#include <vector>

#include "doctest.h"
#include "obstruction_lab/arc_set.hpp"
#include "obstruction_lab/geometry.hpp"

using namespace obstruction_lab;

TEST_CASE("union merges overlapping arcs") {
  const std::vector<ArcSet> parts{ArcSet::from_arc(0, kPi / 2), ArcSet::from_arc(kPi / 4, 3 * kPi / 4)};
  const ArcSet u = arc_union(parts);
  REQUIRE(u.arcs().size() == 1);
  CHECK(u.arcs()[0].start == 0.0);
  CHECK(u.arcs()[0].end == doctest::Approx(kPi));
  CHECK(u.measure() == doctest::Approx(kPi));
}

TEST_CASE("complement of full is empty") {
  const ArcSet c = ArcSet::full().complement();
  CHECK(c.is_empty());
  CHECK(c.measure() == 0.0);
  CHECK(ArcSet::empty().complement().is_full());
}

TEST_CASE("disjoint arcs stay separate") {
  const std::vector<ArcSet> parts{ArcSet::from_arc(0, 1), ArcSet::from_arc(2, 1)};
  const ArcSet u = arc_union(parts);
  CHECK(u.arcs().size() == 2);
  CHECK(u.measure() == doctest::Approx(2.0));
}

TEST_CASE("wrapping arc presentation") {
  const ArcSet a = ArcSet::centered(0.0, 0.5);
  REQUIRE(a.arcs().size() == 1);
  CHECK(a.arcs()[0].wraps());
  CHECK(a.arcs()[0].width() == doctest::Approx(1.0));
  CHECK(a.contains(0.0));
  CHECK(a.contains(kTwoPi - 0.25));
  CHECK_FALSE(a.contains(0.75));
  CHECK(a.classify(0.5) == Membership::Boundary);
  CHECK(a.to_text() == "5.78318530718:0.5");
  CHECK(ArcSet::full().to_text() == "FULL");
  CHECK(ArcSet::empty().to_text() == "EMPTY");
}

TEST_CASE("half-open adjacency merges") {
  const ArcSet a = ArcSet::from_arc(0, 1).unite(ArcSet::from_arc(1, 1));
  CHECK(a.intervals().size() == 1);
  const ArcSet round = ArcSet::from_arc(0, 3).unite(ArcSet::from_arc(3, kTwoPi - 3));
  CHECK(round.is_full());
}

namespace {
ArcSet random_set(std::mt19937_64& rng, int pieces) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ArcUnionBuilder b;
  for (int i = 0; i < pieces; ++i) b.add_centered(kTwoPi * u(rng), 0.6 * u(rng));
  return b.build();
}
}  // namespace

TEST_CASE("inclusion exclusion on random arcs") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 2000; ++t) {
    const ArcSet a = random_set(rng, 1 + t % 7), b = random_set(rng, 1 + (t / 7) % 5);
    const double lhs = a.unite(b).measure() + a.intersect(b).measure();
    CHECK(std::abs(lhs - (a.measure() + b.measure())) < 1e-12);
    CHECK(std::abs(a.measure() + a.complement().measure() - kTwoPi) < 1e-12);
    CHECK(a.subtract(b).unite(a.intersect(b)) == a);
    CHECK(a.intersect(b).is_subset_of(a));
  }
}

TEST_CASE("remove_centered matches subtract and is order independent") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 500; ++t) {
    std::vector<std::pair<double, double>> cuts;
    for (int i = 0; i < 12; ++i) cuts.push_back({7.0 * u(rng) - 0.5, 0.5 * u(rng)});
    ArcSet forward = ArcSet::full(), backward = ArcSet::full();
    ArcUnionBuilder blocked;
    for (const auto& [c, h] : cuts) {
      forward.remove_centered(c, h);
      blocked.add_centered(c, h);
    }
    for (auto it = cuts.rbegin(); it != cuts.rend(); ++it) backward.remove_centered(it->first, it->second);
    CHECK(forward == backward);
    CHECK(forward == blocked.build().complement());
  }
}

TEST_CASE("union measure subadditive") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 500; ++t) {
    std::vector<ArcSet> parts;
    double total = 0.0;
    for (int i = 0; i < 6; ++i) {
      parts.push_back(random_set(rng, 1));
      total += parts.back().measure();
    }
    CHECK(arc_union(parts).measure() <= total + 1e-12);
  }
}
