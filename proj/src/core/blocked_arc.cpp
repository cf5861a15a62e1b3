#include "obstruction_lab/blocked_arc.hpp"

#include <algorithm>
#include <cmath>

#include "obstruction_lab/errors.hpp"

namespace obstruction_lab {

double blocked_half_width_at(double d, double eps, double horizon) {
  if (d < eps) return kPi;
  if (!std::isfinite(horizon)) return std::asin(eps / d);
  const double tangent_len = std::sqrt(std::max(0.0, d * d - eps * eps));
  if (tangent_len <= horizon) return std::asin(eps / d);
  if (d < horizon + eps) {
    // Segment end point on the circle |p - y| = eps.
    const double c = (d * d + horizon * horizon - eps * eps) / (2.0 * d * horizon);
    return std::acos(std::clamp(c, -1.0, 1.0));
  }
  return -1.0;
}

double blocked_half_width(Point x, Point y, double eps, double horizon) {
  if (!(eps > 0.0)) throw LabError(ErrorKind::InvalidInput, "eps must be positive");
  if (!(horizon > 0.0)) throw LabError(ErrorKind::InvalidInput, "horizon must be positive");
  const double d = distance(x, y);
  if (d < kIdentityTolerance) {
    throw LabError(ErrorKind::DegenerateObstacle, "obstacle coincides with the query point");
  }
  return blocked_half_width_at(d, eps, horizon);
}

ArcSet blocked_arc(Point x, Point y, double eps, double horizon) {
  const double h = blocked_half_width(x, y, eps, horizon);
  if (h >= kPi) return ArcSet::full();
  if (h <= 0.0) return ArcSet::empty();
  const Point rel = y - x;
  return ArcSet::centered(std::atan2(rel.y, rel.x), h);
}

}  // namespace obstruction_lab
