#include "obstruction_lab/spatial_grid.hpp"

#include <algorithm>

#include "obstruction_lab/errors.hpp"

namespace obstruction_lab {

SpatialGrid::SpatialGrid(std::span<const Point> points, double cell_size) : cell_(cell_size) {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw LabError(ErrorKind::InvalidInput, "grid cell size must be finite and positive");
  }
  if (points.empty()) {
    offsets_.assign(1, 0);
    return;
  }
  double min_x = points[0].x, max_x = points[0].x, min_y = points[0].y, max_y = points[0].y;
  for (const Point& p : points) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  ox_ = min_x;
  oy_ = min_y;
  nx_ = cell_x(max_x) + 1;
  ny_ = cell_y(max_y) + 1;
  const std::size_t cells = static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_);
  if (cells > (std::size_t{1} << 31)) {
    throw LabError(ErrorKind::InvalidInput, "grid too fine for the point extent");
  }

  std::vector<std::uint32_t> cell_of(points.size());
  offsets_.assign(cells + 1, 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const int ix = std::clamp(cell_x(points[i].x), 0, nx_ - 1);
    const int iy = std::clamp(cell_y(points[i].y), 0, ny_ - 1);
    cell_of[i] = static_cast<std::uint32_t>(flat(ix, iy));
    ++offsets_[cell_of[i] + 1];
  }
  for (std::size_t c = 0; c < cells; ++c) offsets_[c + 1] += offsets_[c];
  points_.resize(points.size());
  indices_.resize(points.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  // Stable: within a cell, points keep their original relative order.
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::size_t slot = cursor[cell_of[i]]++;
    points_[slot] = points[i];
    indices_[slot] = static_cast<std::uint32_t>(i);
  }
}

double SpatialGrid::suggested_cell_size(std::size_t count, double radius) {
  if (count == 0 || !(radius > 0.0)) return 1.0;
  const double area = kPi * radius * radius;
  return std::max(std::sqrt(2.0 * area / static_cast<double>(count)), radius * 1e-6);
}

std::span<const Point> SpatialGrid::cell_points(int ix, int iy) const {
  if (!in_range(ix, iy)) return {};
  const std::size_t f = flat(ix, iy);
  return std::span<const Point>(points_).subspan(offsets_[f], offsets_[f + 1] - offsets_[f]);
}

std::span<const std::uint32_t> SpatialGrid::cell_indices(int ix, int iy) const {
  if (!in_range(ix, iy)) return {};
  const std::size_t f = flat(ix, iy);
  return std::span<const std::uint32_t>(indices_).subspan(offsets_[f], offsets_[f + 1] - offsets_[f]);
}

std::optional<std::uint32_t> SpatialGrid::nearest_within(Point c, double r,
                                                         std::optional<Point> exclude) const {
  std::optional<std::uint32_t> best;
  double best_d2 = kInfinity;
  Point best_p{};
  for_each_within(c, r, [&](std::uint32_t idx, Point p) {
    if (exclude && same_point(p, *exclude)) return;
    const double d2 = norm_squared(p - c);
    if (d2 < best_d2 || (d2 == best_d2 && lex_less(p, best_p))) {
      best_d2 = d2;
      best_p = p;
      best = idx;
    }
  });
  return best;
}

}  // namespace obstruction_lab
