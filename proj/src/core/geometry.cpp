#include "obstruction_lab/geometry.hpp"

#include "obstruction_lab/errors.hpp"

namespace obstruction_lab {

bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  // fmod of a tiny negative number can round up to exactly 2pi.
  if (t >= kTwoPi) t = 0.0;
  return t;
}

Direction::Direction(double theta) {
  if (!std::isfinite(theta)) {
    throw LabError(ErrorKind::InvalidInput, "direction angle must be finite");
  }
  theta_ = normalize_angle(theta);
  cos_ = std::cos(theta_);
  sin_ = std::sin(theta_);
}

Direction Direction::of_vector(Point v) {
  if (!is_finite(v) || (v.x == 0.0 && v.y == 0.0)) {
    throw LabError(ErrorKind::BadDirection, "direction vector must be finite and nonzero");
  }
  return Direction(std::atan2(v.y, v.x));
}

Segment::Segment(Point origin, Direction direction, double length)
    : origin_(origin), direction_(direction), length_(length) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw LabError(ErrorKind::InvalidInput, "segment length must be finite and positive");
  }
}

double dist_point_ray_unit(Point p, Point origin, Point unit, double horizon) {
  const Point rel = p - origin;
  const double t = dot(rel, unit);
  if (t <= 0.0) return norm(rel);
  if (t > horizon) return norm(rel - unit * horizon);
  // |cross| can exceed |rel| by an ulp when unit is not exactly normalized.
  const double c = std::abs(cross(unit, rel));
  const double r2 = norm_squared(rel);
  return c * c > r2 ? std::sqrt(r2) : c;
}

double dist_point_ray(Point p, const Ray& ray) {
  return dist_point_ray_unit(p, ray.origin, ray.direction.unit(), kInfinity);
}

double dist_point_segment(Point p, const Segment& seg) {
  return dist_point_ray_unit(p, seg.origin(), seg.direction().unit(), seg.length());
}

}  // namespace obstruction_lab
