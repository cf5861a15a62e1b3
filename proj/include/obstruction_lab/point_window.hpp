#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "obstruction_lab/geometry.hpp"

namespace obstruction_lab {

// Where a window came from: generator tag, its numeric parameters and seed.
struct Provenance {
  std::string generator;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;

  bool operator==(const Provenance&) const = default;
};

// A discrete obstacle set restricted to the closed disk B(0, W). Everything
// computed from a window is window-scoped: blocking certificates extend to any
// superset, visibility claims do not.
class PointWindow {
 public:
  PointWindow() = default;
  PointWindow(std::vector<Point> points, double window_radius,
              std::optional<double> declared_separation = std::nullopt,
              std::optional<double> declared_density_radius = std::nullopt,
              Provenance provenance = {});

  std::span<const Point> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  double radius() const { return radius_; }
  std::optional<double> declared_separation() const { return separation_; }
  std::optional<double> declared_density_radius() const { return density_radius_; }
  const Provenance& provenance() const { return provenance_; }

  // Same points seen from a new origin: Y - x. Metadata is carried over; the
  // radius grows by |x| so every translated point still fits.
  PointWindow translated(Point offset) const;

  bool operator==(const PointWindow&) const = default;

 private:
  std::vector<Point> points_;
  double radius_ = 0.0;
  std::optional<double> separation_;
  std::optional<double> density_radius_;
  Provenance provenance_;
};

// Minimum of dist_point_ray over the window, skipping points that coincide
// with `exclude`. Throws EmptySet when nothing is left.
double dist_set_ray(const PointWindow& window, const Ray& ray,
                    std::optional<Point> exclude = std::nullopt);

}  // namespace obstruction_lab
