#pragma once

// Integer-scaled approximation of edge vectors by differences of obstacle
// points: bucket partitions, single-edge partner search, exceptional sets and
// recursive realization of plane trees.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "obstruction_lab/errors.hpp"
#include "obstruction_lab/point_window.hpp"
#include "obstruction_lab/spatial_grid.hpp"

namespace obstruction_lab {

struct PlaneTree {
  std::vector<Point> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

// Vertex 0 at the origin; vertex i hangs off a uniformly chosen earlier
// vertex at a uniform angle and length in [0.5, 2], redrawn while it comes
// within 0.25 of an existing vertex.
PlaneTree random_tree(std::size_t vertices, std::uint64_t seed);

// InvalidInput unless the tree is connected, acyclic and has no coinciding
// vertices (within 1e-9).
void validate_tree(const PlaneTree& tree);

// Coordinates after rotating v onto the positive first axis.
struct DirectionFrame {
  explicit DirectionFrame(Point v);
  double pi1(Point y) const { return dot(y, unit); }
  double pi2(Point y) const { return cross(unit, y); }
  Point v;
  Point unit;
  double length;
};

// Partition of Y cap B(0, r) (open ball) into cells (i, j), 1 <= i <= N1,
// 1 <= j <= N2. pi2 is cut into N1 = ceil(4r / eps) slices of [-r, r) and the
// fractional part of pi1 / |v| into N2 = ceil(2|v| / eps) slices of [0, 1),
// so two points of one cell differ by k v up to less than eps / sqrt 2.
class BucketGrid {
 public:
  BucketGrid(const PointWindow& window, Point v, double r, double eps);

  struct Cell {
    int i = 0;
    int j = 0;
    bool operator==(const Cell&) const = default;
  };

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  double r() const { return r_; }
  double eps() const { return eps_; }
  const DirectionFrame& frame() const { return frame_; }

  // Nullopt outside the open ball.
  std::optional<Cell> cell_of(Point y) const;
  // Window indices in cell (i, j), ascending.
  std::span<const std::uint32_t> cell(int i, int j) const;

  // Closest integer to (pi1(z) - pi1(w)) / |v|.
  std::int64_t nearest_scale(Point z, Point w) const;

 private:
  DirectionFrame frame_;
  double r_, eps_;
  int n1_ = 0, n2_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> members_;
};

struct EdgeMatch {
  Point w;
  std::uint32_t index = 0;  // into the window
  std::int64_t k = 0;
  double residual = 0.0;    // |(z - w) - k v|
};

// Grid index for repeated partner queries against one window.
class PartnerIndex {
 public:
  PartnerIndex(const PointWindow& window, double eps);

  // Smallest k >= k_min, scanning while |z - k v| < W + eps, whose target
  // z - k v has a window point other than z within eps; the nearest one wins,
  // ties to the lexicographically smaller point.
  std::optional<EdgeMatch> find(Point z, Point v, std::int64_t k_min) const;

  // Window index of a point within 1e-9 of p.
  std::optional<std::uint32_t> locate(Point p) const;

  const PointWindow& window() const { return *window_; }
  double eps() const { return eps_; }

 private:
  const PointWindow* window_;
  double eps_;
  SpatialGrid grid_;
};

// Throws BadDirection for v = 0, BadParam for min_scale < 1 or eps <= 0,
// NoPartner when the scan leaves the window.
EdgeMatch realize_edge(Point z, Point v, double eps, std::int64_t min_scale, const PointWindow& window);

struct ExceptionalSet {
  std::vector<Point> exceptional;     // lexicographic order
  std::vector<std::uint32_t> indices;  // window indices, same order
  std::size_t examined = 0;           // window points in B(0, r)
  std::int64_t n1 = 0, n2 = 0;
  std::int64_t per_cell = 1;          // 1, or ceil(2 M |v| / delta) for M > 1
  std::int64_t bound = 0;             // n1 n2 per_cell

  double fraction() const { return examined == 0 ? 0.0 : static_cast<double>(exceptional.size()) / examined; }
};

// Window points z in B(0, r) with no w != z and integer k >= min_scale such
// that |(z - w) - k v| < eps, partners taken from the whole window.
// min_scale = 0 is the unscaled variant. Throws MissingSeparation for
// min_scale > 1 without a declared separation, BadParam for r > W.
ExceptionalSet exceptional_set(const PointWindow& window, Point v, double eps, std::int64_t min_scale,
                               double r, int threads = 1);

struct Realization {
  std::vector<Point> assignment;            // per vertex
  std::vector<std::uint32_t> window_index;  // per vertex
  std::vector<std::int64_t> scalings;       // per edge, in tree.edges order
  std::vector<double> residuals;            // per edge
  double eps = 0.0;
};

class RealizationFailed : public LabError {
 public:
  RealizationFailed(const std::string& message, std::size_t vertex)
      : LabError(ErrorKind::RealizationFailed, message), vertex_(vertex) {}
  std::size_t vertex() const { return vertex_; }

 private:
  std::size_t vertex_;
};

// Realizes each root edge from the anchor with min_scale 1 along
// x_root - x_child, then recurses into the subtrees; children in index order.
// y0 must be a window point. Throws RealizationFailed naming the child
// vertex of the first edge without a partner.
Realization realize_tree(const PlaneTree& tree, std::size_t root, Point y0, const PointWindow& window,
                         double eps);
Realization realize_tree(const PlaneTree& tree, std::size_t root, Point y0, const PartnerIndex& index);

// Recomputes every edge inequality from scratch.
bool verify_realization(const PlaneTree& tree, const Realization& real);

}  // namespace obstruction_lab
