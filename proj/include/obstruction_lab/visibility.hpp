#pragma once

// eps-visibility at a point: free and blocked direction sets, horizon-T
// blockedness certificates and the hidden-point search built on them.

#include <cstdint>
#include <optional>
#include <vector>

#include "obstruction_lab/arc_set.hpp"
#include "obstruction_lab/point_window.hpp"
#include "obstruction_lab/spatial_grid.hpp"

namespace obstruction_lab {

struct VisibilityReport {
  Point query_point;
  double eps = 0.0;
  double horizon = kInfinity;
  ArcSet free;
  ArcSet blocked;
  std::size_t contributing_obstacles = 0;
  // Infinite-horizon reports only speak about the window's points.
  bool window_scoped = true;
};

// Throws HorizonExceedsWindow when a finite horizon does not fit:
// |x| + horizon + eps > W.
void require_horizon_margin(Point x, double window_radius, double eps, double horizon);

VisibilityReport visibility_arcs(Point x, const PointWindow& window, double eps,
                                 double horizon = kInfinity);

struct BlockedCertificate {
  bool certified_hidden = false;
  ArcSet uncovered;  // exact free set; empty iff certified
  std::size_t obstacles_examined = 0;
};

// Incremental certificate engine over one window. Starting from the full
// circle it removes blocked arcs nearest-first and, at each doubling radius,
// only visits grid cells that can still reach a free direction. Obstacles it
// skips provably miss the remaining free set, so `uncovered` is always exactly
// the complement of the full finite-horizon union.
class VisibilityEngine {
 public:
  VisibilityEngine(const PointWindow& window, double eps, double horizon);

  struct Scratch {
    std::vector<std::uint32_t> stamp;
    std::uint32_t epoch = 0;
  };
  Scratch make_scratch() const;

  // `tangent_center` (an index into window.points()) marks an obstacle that x
  // lies on the eps-circle of: it blocks exactly the open half-plane of
  // directions towards it, regardless of rounding in |x - z|.
  BlockedCertificate certify(Point x, Scratch& scratch,
                             std::optional<std::uint32_t> tangent_center = std::nullopt) const;

  // The free set alone. Once it is empty nothing more can change, so the
  // early exit of certify() loses nothing.
  ArcSet free_set(Point x, Scratch& scratch,
                  std::optional<std::uint32_t> tangent_center = std::nullopt) const;

  const PointWindow& window() const { return *window_; }
  double eps() const { return eps_; }
  double horizon() const { return horizon_; }

 private:
  BlockedCertificate run(Point x, Scratch& scratch, std::optional<std::uint32_t> tangent_center) const;

  const PointWindow* window_;
  double eps_;
  double horizon_;
  SpatialGrid grid_;
  std::vector<std::uint32_t> sorted_of_original_;
};

BlockedCertificate t_blocked_certificate(Point x, const PointWindow& window, double eps, double T);

enum class CandidateMode { Grid, BoundaryCircles };

struct CandidateSpec {
  CandidateMode mode = CandidateMode::Grid;
  double spacing = 0.25;
  int samples_per_circle = 256;
};

struct HiddenPoint {
  Point point;
  std::optional<std::uint32_t> center;  // circle centre (window index) in circle mode
};

struct HiddenSearchResult {
  std::vector<HiddenPoint> hidden;  // sorted lexicographically by point
  std::size_t candidates = 0;
};

// Throws NoAdmissibleRegion when no candidate fits |c| + T + eps <= W.
HiddenSearchResult hidden_search(const PointWindow& window, double eps, double T,
                                 const CandidateSpec& spec, int threads = 1);

struct InverseNormSum {
  double partial_sum = 0.0;
  double blocked_measure = 0.0;
  double bound = 0.0;
  double min_distance = 0.0;
};

// Throws EpsilonTooLarge unless eps < min |y - x| over the window minus x.
InverseNormSum inverse_norm_sum_and_bound(const PointWindow& window, Point x, double eps);

}  // namespace obstruction_lab
