#include "obstruction_lab/arc_set.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "obstruction_lab/geometry.hpp"

namespace obstruction_lab {

namespace {

// Splits a half-open arc into at most two linear pieces inside [0, 2pi].
// Returns the number of pieces written; -1 means the whole circle.
int split_arc(double start, double width, Interval out[2]) {
  if (!(width > 0.0)) return 0;
  if (width >= kTwoPi) return -1;
  const double s = normalize_angle(start);
  const double e = s + width;
  if (e <= kTwoPi) {
    out[0] = {s, e};
    return 1;
  }
  out[0] = {s, kTwoPi};
  const double wrapped = e - kTwoPi;
  if (wrapped > 0.0) {
    out[1] = {0.0, wrapped};
    return 2;
  }
  return 1;
}

int split_centered(double center, double half_width, Interval out[2]) {
  if (!(half_width > 0.0)) return 0;
  if (half_width >= kPi) return -1;
  return split_arc(center - half_width, 2.0 * half_width, out);
}

// Sorts and merges raw intervals; adjacent half-open intervals are joined.
std::vector<Interval> canonicalize(std::vector<Interval> raw) {
  std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  std::vector<Interval> out;
  out.reserve(raw.size());
  for (const Interval& iv : raw) {
    if (!(iv.hi > iv.lo)) continue;
    if (!out.empty() && iv.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, iv.hi);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

std::vector<Interval> complement_of(std::span<const Interval> iv) {
  std::vector<Interval> out;
  double cursor = 0.0;
  for (const Interval& piece : iv) {
    if (piece.lo > cursor) out.push_back({cursor, piece.lo});
    cursor = piece.hi;
  }
  if (cursor < kTwoPi) out.push_back({cursor, kTwoPi});
  return out;
}

double angular_gap(double a, double b) {
  const double d = std::abs(a - b);
  return std::min(d, kTwoPi - d);
}

std::string format_angle(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

double Arc::width() const {
  return end >= start ? end - start : end + kTwoPi - start;
}

ArcSet ArcSet::full() { return ArcSet(std::vector<Interval>{{0.0, kTwoPi}}); }

ArcSet ArcSet::from_arc(double start, double width) {
  Interval pieces[2];
  const int n = split_arc(start, width, pieces);
  if (n < 0) return full();
  return ArcSet(canonicalize({pieces, pieces + n}));
}

ArcSet ArcSet::centered(double center, double half_width) {
  Interval pieces[2];
  const int n = split_centered(center, half_width, pieces);
  if (n < 0) return full();
  return ArcSet(canonicalize({pieces, pieces + n}));
}

bool ArcSet::is_full() const {
  return intervals_.size() == 1 && intervals_[0].lo <= 0.0 && intervals_[0].hi >= kTwoPi;
}

double ArcSet::measure() const {
  double m = 0.0;
  for (const Interval& iv : intervals_) m += iv.hi - iv.lo;
  return m;
}

ArcSet ArcSet::unite(const ArcSet& other) const {
  std::vector<Interval> raw(intervals_);
  raw.insert(raw.end(), other.intervals_.begin(), other.intervals_.end());
  return ArcSet(canonicalize(std::move(raw)));
}

ArcSet ArcSet::intersect(const ArcSet& other) const {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  const auto& a = intervals_;
  const auto& b = other.intervals_;
  while (i < a.size() && j < b.size()) {
    const double lo = std::max(a[i].lo, b[j].lo);
    const double hi = std::min(a[i].hi, b[j].hi);
    if (lo < hi) out.push_back({lo, hi});
    if (a[i].hi < b[j].hi) ++i; else ++j;
  }
  return ArcSet(std::move(out));
}

ArcSet ArcSet::complement() const { return ArcSet(complement_of(intervals_)); }

ArcSet ArcSet::subtract(const ArcSet& other) const { return intersect(other.complement()); }

bool ArcSet::intersects(const ArcSet& other) const { return !intersect(other).is_empty(); }

bool ArcSet::is_subset_of(const ArcSet& other) const { return subtract(other).is_empty(); }

void ArcSet::remove_centered(double center, double half_width) {
  if (intervals_.empty()) return;
  Interval pieces[2];
  const int n = split_centered(center, half_width, pieces);
  if (n < 0) {
    intervals_.clear();
    return;
  }
  for (int p = 0; p < n; ++p) {
    const Interval cut = pieces[p];
    // First interval whose hi exceeds cut.lo; everything before is untouched.
    auto first = std::upper_bound(intervals_.begin(), intervals_.end(), cut.lo,
                                  [](double v, const Interval& iv) { return v < iv.hi; });
    if (first == intervals_.end() || first->lo >= cut.hi) continue;
    auto last = first;
    Interval left{0.0, 0.0}, right{0.0, 0.0};
    bool keep_left = false, keep_right = false;
    if (first->lo < cut.lo) {
      left = {first->lo, cut.lo};
      keep_left = true;
    }
    while (last != intervals_.end() && last->lo < cut.hi) ++last;
    const Interval tail = *(last - 1);
    if (tail.hi > cut.hi) {
      right = {cut.hi, tail.hi};
      keep_right = true;
    }
    const auto at = intervals_.erase(first, last);
    std::vector<Interval> insert;
    if (keep_left) insert.push_back(left);
    if (keep_right) insert.push_back(right);
    intervals_.insert(at, insert.begin(), insert.end());
    if (intervals_.empty()) return;
  }
}

bool ArcSet::contains(double theta) const {
  const double t = normalize_angle(theta);
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), t,
                             [](double v, const Interval& iv) { return v < iv.hi; });
  return it != intervals_.end() && it->lo <= t;
}

Membership ArcSet::classify(double theta, double tolerance) const {
  const double t = normalize_angle(theta);
  if (!is_full()) {
    for (const Arc& arc : arcs()) {
      if (angular_gap(t, arc.start) <= tolerance || angular_gap(t, arc.end) <= tolerance) {
        return Membership::Boundary;
      }
    }
  }
  return contains(t) ? Membership::Inside : Membership::Outside;
}

std::vector<Arc> ArcSet::arcs() const {
  std::vector<Arc> out;
  if (intervals_.empty()) return out;
  if (is_full()) return {{0.0, kTwoPi}};
  const bool joined = intervals_.size() >= 2 && intervals_.front().lo <= 0.0 &&
                      intervals_.back().hi >= kTwoPi;
  const std::size_t begin = joined ? 1 : 0;
  const std::size_t end = joined ? intervals_.size() - 1 : intervals_.size();
  for (std::size_t i = begin; i < end; ++i) out.push_back({intervals_[i].lo, intervals_[i].hi});
  if (joined) out.push_back({intervals_.back().lo, intervals_.front().hi});
  return out;
}

std::string ArcSet::to_text() const {
  if (intervals_.empty()) return "EMPTY";
  if (is_full()) return "FULL";
  std::string out;
  for (const Arc& arc : arcs()) {
    if (!out.empty()) out += ';';
    out += format_angle(arc.start);
    out += ':';
    out += format_angle(arc.end);
  }
  return out;
}

void ArcUnionBuilder::add_linear(double lo, double hi) { raw_.push_back({lo, hi}); }

void ArcUnionBuilder::add(const ArcSet& set) {
  for (const Interval& iv : set.intervals()) add_linear(iv.lo, iv.hi);
}

void ArcUnionBuilder::add_centered(double center, double half_width) {
  if (full_) return;
  Interval pieces[2];
  const int n = split_centered(center, half_width, pieces);
  if (n < 0) {
    full_ = true;
    return;
  }
  for (int p = 0; p < n; ++p) add_linear(pieces[p].lo, pieces[p].hi);
}

ArcSet ArcUnionBuilder::build() const {
  if (full_) return ArcSet::full();
  return ArcSet(canonicalize(raw_));
}

ArcSet arc_union(std::span<const ArcSet> parts) {
  ArcUnionBuilder builder;
  for (const ArcSet& part : parts) builder.add(part);
  return builder.build();
}

}  // namespace obstruction_lab
