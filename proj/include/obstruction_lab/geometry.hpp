#pragma once

// Planar primitives: points, directions, rays, segments and the exact
// point-to-ray / point-to-segment distances everything else is built on.

#include <cmath>
#include <limits>
#include <numbers>

namespace obstruction_lab {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Two points closer than this are the same point. Inputs routinely pass
// through decimal serialization, so exact equality is too strict.
inline constexpr double kIdentityTolerance = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;

  constexpr Point operator+(Point o) const { return {x + o.x, y + o.y}; }
  constexpr Point operator-(Point o) const { return {x - o.x, y - o.y}; }
  constexpr Point operator-() const { return {-x, -y}; }
  constexpr Point operator*(double s) const { return {x * s, y * s}; }
  friend constexpr Point operator*(double s, Point p) { return p * s; }
  constexpr bool operator==(const Point&) const = default;
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point p) { return std::sqrt(p.x * p.x + p.y * p.y); }
constexpr double norm_squared(Point p) { return dot(p, p); }
inline double distance(Point a, Point b) { return norm(a - b); }

// Lexicographic (x, then y). Used wherever output order must be canonical.
constexpr bool lex_less(Point a, Point b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

inline bool same_point(Point a, Point b) {
  return distance(a, b) < kIdentityTolerance;
}

bool is_finite(Point p);

// Maps any finite angle into [0, 2pi).
double normalize_angle(double theta);

class Direction {
 public:
  Direction() = default;
  explicit Direction(double theta);
  static Direction of_vector(Point v);

  double theta() const { return theta_; }
  Point unit() const { return {cos_, sin_}; }

 private:
  double theta_ = 0.0;
  double cos_ = 1.0;
  double sin_ = 0.0;
};

// L_{x,v} = {x + t v : t >= 0}.
struct Ray {
  Point origin;
  Direction direction;
};

// {x + t v : t in [0, length]}, length finite and > 0.
class Segment {
 public:
  Segment(Point origin, Direction direction, double length);

  Point origin() const { return origin_; }
  Direction direction() const { return direction_; }
  double length() const { return length_; }
  Point end() const { return origin_ + direction_.unit() * length_; }

 private:
  Point origin_;
  Direction direction_;
  double length_;
};

double dist_point_ray(Point p, const Ray& ray);
double dist_point_segment(Point p, const Segment& seg);

// Same quantities on raw data: unit direction u, horizon T (may be infinite).
// Hot loops use this form to skip constructing Segment objects.
double dist_point_ray_unit(Point p, Point origin, Point unit, double horizon);

}  // namespace obstruction_lab
