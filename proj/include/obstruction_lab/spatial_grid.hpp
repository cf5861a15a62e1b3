#pragma once

// Uniform bucket grid over a fixed point list, stored CSR-style (points
// are copied into cell order so a cell scan touches contiguous memory).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "obstruction_lab/geometry.hpp"

namespace obstruction_lab {

class SpatialGrid {
 public:
  SpatialGrid() = default;
  SpatialGrid(std::span<const Point> points, double cell_size);

  // Roughly two points per cell for a set spread over a disk of `radius`.
  static double suggested_cell_size(std::size_t count, double radius);

  double cell_size() const { return cell_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t size() const { return points_.size(); }

  int cell_x(double x) const { return static_cast<int>(std::floor((x - ox_) / cell_)); }
  int cell_y(double y) const { return static_cast<int>(std::floor((y - oy_) / cell_)); }
  double cell_x0(int ix) const { return ox_ + ix * cell_; }
  double cell_y0(int iy) const { return oy_ + iy * cell_; }
  bool in_range(int ix, int iy) const { return ix >= 0 && iy >= 0 && ix < nx_ && iy < ny_; }

  // Points of one cell (empty when out of range) and their original indices.
  std::span<const Point> cell_points(int ix, int iy) const;
  std::span<const std::uint32_t> cell_indices(int ix, int iy) const;
  // [begin, end) of a cell within sorted_points(); ix, iy must be in range.
  std::pair<std::size_t, std::size_t> cell_range(int ix, int iy) const {
    const std::size_t f = flat(ix, iy);
    return {offsets_[f], offsets_[f + 1]};
  }
  std::span<const Point> sorted_points() const { return points_; }
  std::span<const std::uint32_t> sorted_indices() const { return indices_; }

  // Calls f(original_index, point) for every point with |p - c| < r.
  template <class F>
  void for_each_within(Point c, double r, F&& f) const {
    if (points_.empty()) return;
    const int x0 = std::max(0, cell_x(c.x - r)), x1 = std::min(nx_ - 1, cell_x(c.x + r));
    const int y0 = std::max(0, cell_y(c.y - r)), y1 = std::min(ny_ - 1, cell_y(c.y + r));
    const double r2 = r * r;
    for (int iy = y0; iy <= y1; ++iy) {
      for (int ix = x0; ix <= x1; ++ix) {
        const std::size_t b = offsets_[flat(ix, iy)], e = offsets_[flat(ix, iy) + 1];
        for (std::size_t k = b; k < e; ++k) {
          if (norm_squared(points_[k] - c) < r2) f(indices_[k], points_[k]);
        }
      }
    }
  }

  // Whether some point lies in the closed disk |p - c| <= r.
  bool any_within_closed(Point c, double r) const {
    if (points_.empty()) return false;
    const int x0 = std::max(0, cell_x(c.x - r)), x1 = std::min(nx_ - 1, cell_x(c.x + r));
    const int y0 = std::max(0, cell_y(c.y - r)), y1 = std::min(ny_ - 1, cell_y(c.y + r));
    const double r2 = r * r;
    for (int iy = y0; iy <= y1; ++iy) {
      for (int ix = x0; ix <= x1; ++ix) {
        const std::size_t b = offsets_[flat(ix, iy)], e = offsets_[flat(ix, iy) + 1];
        for (std::size_t k = b; k < e; ++k) {
          if (norm_squared(points_[k] - c) <= r2) return true;
        }
      }
    }
    return false;
  }

  // Nearest point strictly within r of c, ignoring points that coincide with
  // `exclude`. Ties go to the lexicographically smaller point.
  std::optional<std::uint32_t> nearest_within(Point c, double r,
                                              std::optional<Point> exclude = std::nullopt) const;

 private:
  std::size_t flat(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(ix);
  }

  double cell_ = 1.0;
  double ox_ = 0.0, oy_ = 0.0;
  int nx_ = 0, ny_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<Point> points_;
  std::vector<std::uint32_t> indices_;
};

}  // namespace obstruction_lab
