#include <algorithm>
#include <cmath>

#include "obstruction_lab/blocked_arc.hpp"
#include "obstruction_lab/dark_forest.hpp"
#include "obstruction_lab/parallel.hpp"
#include "obstruction_lab/visibility.hpp"

namespace obstruction_lab {

std::string_view to_string(BoundaryKind kind) noexcept {
  switch (kind) {
    case BoundaryKind::NotEpsVisible: return "not_eps_visible";
    case BoundaryKind::TangentialBelow: return "tangential_below";
    case BoundaryKind::TangentialAbove: return "tangential_above";
    case BoundaryKind::Frontal: return "frontal";
  }
  return "unknown";
}

namespace {

double midpoint(const Arc& a) { return a.start + 0.5 * a.width(); }

std::optional<Arc> widest(const ArcSet& s) {
  std::optional<Arc> best;
  for (const Arc& a : s.arcs()) {
    if (!best || a.width() > best->width()) best = a;
  }
  return best;
}

}  // namespace

BoundaryClass classify_from_free(Point z, double angle, const ArcSet& free, const ForestConstants& fc) {
  BoundaryClass bc;
  const Point radial{std::cos(angle), std::sin(angle)};
  bc.point = z + radial * fc.eps;
  bc.free = free;
  if (free.is_empty()) return bc;

  // With p rotated to the rightmost point of the circle the tangent is
  // vertical: "below" rays leave at angle - pi/2, "above" rays at angle + pi/2,
  // each allowed to turn outwards by at most delta.
  const double d = fc.tangent_delta;
  const ArcSet below = ArcSet::from_arc(angle - kPi / 2, d);
  const ArcSet above = ArcSet::from_arc(angle + kPi / 2 - d, d);
  const ArcSet free_below = free.intersect(below);
  const ArcSet free_above = free.intersect(above);
  const ArcSet frontal = free.subtract(below).subtract(above);
  bc.tangential_below = !free_below.is_empty();
  bc.tangential_above = !free_above.is_empty();
  bc.frontal_ray = !frontal.is_empty();

  if (bc.tangential_below || bc.tangential_above) {
    bc.kind = bc.tangential_below ? BoundaryKind::TangentialBelow : BoundaryKind::TangentialAbove;
    const Arc a = *widest(bc.tangential_below ? free_below : free_above);
    bc.witness = Ray{bc.point, Direction(midpoint(a))};
    return bc;
  }
  bc.kind = BoundaryKind::Frontal;
  const Arc a = *widest(frontal);
  const Direction dir(midpoint(a));
  bc.witness = Ray{bc.point, dir};
  bc.depth = fc.eps - std::abs(cross(dir.unit(), z - bc.point));
  return bc;
}

BoundaryClass classify_boundary_point(Point z, double angle, const PointWindow& window,
                                      const ForestConstants& fc, double horizon) {
  const double eps = fc.eps;
  const Point p = z + Point{std::cos(angle), std::sin(angle)} * eps;
  require_horizon_margin(p, window.radius(), eps, horizon);
  ArcUnionBuilder builder;
  builder.reserve(window.size() + 1);
  const Point to_z = z - p;
  builder.add_centered(std::atan2(to_z.y, to_z.x), kPi / 2);
  for (const Point& y : window.points()) {
    if (same_point(y, z)) continue;
    const Point rel = y - p;
    const double dist = norm(rel);
    if (dist < kIdentityTolerance) continue;
    const double h = blocked_half_width_at(dist, eps, horizon);
    if (h >= kPi) {
      builder.add_full();
    } else if (h > 0.0) {
      builder.add_centered(std::atan2(rel.y, rel.x), h);
    }
  }
  return classify_from_free(z, angle, builder.build().complement(), fc);
}

CensusResult frontal_census(const PointWindow& window, const ForestConstants& fc, double T,
                            int samples_per_circle, int threads) {
  if (samples_per_circle < 1) throw LabError(ErrorKind::BadParam, "samples per circle must be >= 1");
  const auto pts = window.points();
  std::vector<std::uint32_t> order;
  for (std::uint32_t i = 0; i < pts.size(); ++i) {
    if (norm(pts[i]) <= T) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return lex_less(pts[a], pts[b]); });

  const VisibilityEngine engine(window, fc.eps, T);
  std::vector<CircleCensus> circles(order.size());
  std::vector<std::vector<Point>> hidden(order.size());
  const int workers = std::max(1, threads);
  std::vector<VisibilityEngine::Scratch> scratch(static_cast<std::size_t>(workers));
  parallel_for(order.size(), workers, [&](std::size_t b, std::size_t e, int w) {
    auto& s = scratch[static_cast<std::size_t>(w)];
    for (std::size_t c = b; c < e; ++c) {
      const std::uint32_t zi = order[c];
      const Point z = pts[zi];
      CircleCensus cc;
      cc.z = z;
      cc.window_index = zi;
      for (int t = 0; t < samples_per_circle; ++t) {
        const double a = kTwoPi * t / samples_per_circle;
        const Point p = z + Point{std::cos(a), std::sin(a)} * fc.eps;
        const ArcSet free = engine.free_set(p, s, zi);
        const BoundaryClass bc = classify_from_free(z, a, free, fc);
        switch (bc.kind) {
          case BoundaryKind::NotEpsVisible:
            ++cc.not_visible;
            hidden[c].push_back(bc.point);
            break;
          case BoundaryKind::TangentialBelow:
          case BoundaryKind::TangentialAbove: ++cc.tangential; break;
          case BoundaryKind::Frontal: ++cc.frontal; break;
        }
        cc.frontal_ray = cc.frontal_ray || bc.frontal_ray;
      }
      circles[c] = cc;
    }
  }, 8);

  CensusResult res;
  res.total = circles.size();
  for (std::size_t c = 0; c < circles.size(); ++c) {
    const CircleCensus& cc = circles[c];
    if (cc.frontal > 0) ++res.frontal;
    else if (cc.tangential > 0) ++res.tangential_only;
    if (cc.frontal_ray) ++res.frontal_ray;
    if (cc.not_visible > 0) ++res.hidden_circles;
    res.hidden_witnesses.insert(res.hidden_witnesses.end(), hidden[c].begin(), hidden[c].end());
  }
  res.circles = std::move(circles);
  return res;
}

}  // namespace obstruction_lab
