#pragma once

// Unions of half-open arcs on the direction circle.
//
// Internally an ArcSet is a sorted list of disjoint, non-adjacent linear
// intervals [lo, hi) inside [0, 2pi]. An arc that wraps through 0 is stored
// as its two linear pieces and only re-joined in the presentation returned by
// arcs(). All set operations copy endpoints and never do arithmetic on them,
// so the result of a sequence of unions/subtractions does not depend on the
// order in which they are applied.

#include <span>
#include <string>
#include <vector>

namespace obstruction_lab {

// Directions closer than this to an arc endpoint are boundary-ambiguous.
inline constexpr double kArcBoundaryTolerance = 1e-9;

struct Interval {
  double lo;
  double hi;
  bool operator==(const Interval&) const = default;
};

// Presentation arc; wraps through 2pi -> 0 when end < start.
struct Arc {
  double start;
  double end;
  double width() const;
  bool wraps() const { return end < start; }
};

enum class Membership { Outside, Inside, Boundary };

class ArcSet {
 public:
  ArcSet() = default;

  static ArcSet empty() { return {}; }
  static ArcSet full();
  // Half-open arc [start, start + width) for any finite start; width >= 2pi
  // gives the full circle, width <= 0 the empty set.
  static ArcSet from_arc(double start, double width);
  static ArcSet centered(double center, double half_width);

  ArcSet unite(const ArcSet& other) const;
  ArcSet intersect(const ArcSet& other) const;
  ArcSet subtract(const ArcSet& other) const;
  ArcSet complement() const;

  // Removes the half-open arc centred at `center`; the in-place workhorse of
  // the incremental visibility engine.
  void remove_centered(double center, double half_width);

  bool is_empty() const { return intervals_.empty(); }
  bool is_full() const;
  double measure() const;
  bool intersects(const ArcSet& other) const;
  bool is_subset_of(const ArcSet& other) const;

  bool contains(double theta) const;
  Membership classify(double theta,
                      double tolerance = kArcBoundaryTolerance) const;

  std::span<const Interval> intervals() const { return intervals_; }
  std::vector<Arc> arcs() const;

  // "start:end;start:end" (radians, 12 significant digits), "FULL" or "EMPTY".
  std::string to_text() const;

  bool operator==(const ArcSet&) const = default;

 private:
  friend class ArcUnionBuilder;
  explicit ArcSet(std::vector<Interval> canonical) : intervals_(std::move(canonical)) {}

  std::vector<Interval> intervals_;
};

// Collects many arcs and merges them in one sort, O(n log n).
class ArcUnionBuilder {
 public:
  void reserve(std::size_t n) { raw_.reserve(2 * n); }
  void add(const ArcSet& set);
  void add_centered(double center, double half_width);
  void add_full() { full_ = true; }
  std::size_t size() const { return raw_.size(); }
  ArcSet build() const;

 private:
  void add_linear(double lo, double hi);

  std::vector<Interval> raw_;
  bool full_ = false;
};

ArcSet arc_union(std::span<const ArcSet> parts);

}  // namespace obstruction_lab
