#include "obstruction_lab/point_window.hpp"

#include <algorithm>

#include "obstruction_lab/errors.hpp"

namespace obstruction_lab {

namespace {
// Radii such as r_{k_max} are the norm of a generated point; allow the few
// ulps by which a recomputed norm can differ.
constexpr double kRadiusSlack = 1e-12;
}  // namespace

PointWindow::PointWindow(std::vector<Point> points, double window_radius,
                         std::optional<double> declared_separation,
                         std::optional<double> declared_density_radius, Provenance provenance)
    : points_(std::move(points)),
      radius_(window_radius),
      separation_(declared_separation),
      density_radius_(declared_density_radius),
      provenance_(std::move(provenance)) {
  if (!(radius_ > 0.0) || !std::isfinite(radius_)) {
    throw LabError(ErrorKind::InvalidInput, "window radius must be finite and positive");
  }
  if (separation_ && !(*separation_ > 0.0)) {
    throw LabError(ErrorKind::InvalidInput, "declared separation must be positive");
  }
  if (density_radius_ && !(*density_radius_ > 0.0)) {
    throw LabError(ErrorKind::InvalidInput, "declared density radius must be positive");
  }
  const double limit = radius_ * (1.0 + kRadiusSlack);
  for (const Point& p : points_) {
    if (!is_finite(p)) throw LabError(ErrorKind::InvalidInput, "window point is not finite");
    if (norm(p) > limit) {
      throw LabError(ErrorKind::InvalidInput, "window point lies outside the window radius");
    }
  }
}

PointWindow PointWindow::translated(Point offset) const {
  std::vector<Point> moved;
  moved.reserve(points_.size());
  for (const Point& p : points_) moved.push_back(p - offset);
  double r = radius_ + norm(offset);
  for (const Point& p : moved) r = std::max(r, norm(p));
  return PointWindow(std::move(moved), r, separation_, density_radius_, provenance_);
}

double dist_set_ray(const PointWindow& window, const Ray& ray, std::optional<Point> exclude) {
  double best = kInfinity;
  bool any = false;
  const Point u = ray.direction.unit();
  for (const Point& p : window.points()) {
    if (exclude && same_point(p, *exclude)) continue;
    any = true;
    best = std::min(best, dist_point_ray_unit(p, ray.origin, u, kInfinity));
  }
  if (!any) throw LabError(ErrorKind::EmptySet, "no window point left after exclusion");
  return best;
}

}  // namespace obstruction_lab
