#include "obstruction_lab/visibility.hpp"

#include <algorithm>
#include <cmath>

#include "obstruction_lab/blocked_arc.hpp"
#include "obstruction_lab/errors.hpp"
#include "obstruction_lab/parallel.hpp"

namespace obstruction_lab {

namespace {

void require_positive(double eps, double horizon) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw LabError(ErrorKind::InvalidInput, "eps must be positive");
  if (!(horizon > 0.0)) throw LabError(ErrorKind::InvalidInput, "horizon must be positive");
}

// Free arcs narrower than this are culled with a trapezoid, wider ones with
// the whole disk.
constexpr double kWideHalfAngle = 0.5;

struct Vec2 {
  double x, y;
};

// x-extent of a convex polygon clipped to the strip y0 <= y <= y1.
bool strip_extent(const Vec2* poly, int n, double y0, double y1, double& xmin, double& xmax) {
  Vec2 a[12], b[12];
  int na = n;
  std::copy(poly, poly + n, a);
  auto clip = [](const Vec2* in, int nin, Vec2* out, double bound, bool keep_above) {
    int nout = 0;
    for (int i = 0; i < nin; ++i) {
      const Vec2 p = in[i], q = in[(i + 1) % nin];
      const bool pin = keep_above ? p.y >= bound : p.y <= bound;
      const bool qin = keep_above ? q.y >= bound : q.y <= bound;
      if (pin) out[nout++] = p;
      if (pin != qin) {
        const double t = (bound - p.y) / (q.y - p.y);
        out[nout++] = {p.x + t * (q.x - p.x), bound};
      }
    }
    return nout;
  };
  const int nb = clip(a, na, b, y0, true);
  if (nb == 0) return false;
  na = clip(b, nb, a, y1, false);
  if (na == 0) return false;
  xmin = xmax = a[0].x;
  for (int i = 1; i < na; ++i) {
    xmin = std::min(xmin, a[i].x);
    xmax = std::max(xmax, a[i].x);
  }
  return true;
}

}  // namespace

void require_horizon_margin(Point x, double window_radius, double eps, double horizon) {
  if (!std::isfinite(horizon)) return;
  if (norm(x) + horizon + eps > window_radius) {
    throw LabError(ErrorKind::HorizonExceedsWindow,
                   "|x| + T + eps exceeds the window radius; obstacles outside the window could matter");
  }
}

VisibilityReport visibility_arcs(Point x, const PointWindow& window, double eps, double horizon) {
  require_positive(eps, horizon);
  require_horizon_margin(x, window.radius(), eps, horizon);
  VisibilityReport rep;
  rep.query_point = x;
  rep.eps = eps;
  rep.horizon = horizon;
  rep.window_scoped = !std::isfinite(horizon);
  ArcUnionBuilder builder;
  builder.reserve(window.size());
  for (const Point& y : window.points()) {
    const Point rel = y - x;
    const double d = norm(rel);
    if (d < kIdentityTolerance) continue;
    const double h = blocked_half_width_at(d, eps, horizon);
    if (h >= kPi) {
      builder.add_full();
      ++rep.contributing_obstacles;
    } else if (h > 0.0) {
      builder.add_centered(std::atan2(rel.y, rel.x), h);
      ++rep.contributing_obstacles;
    }
  }
  rep.blocked = builder.build();
  rep.free = rep.blocked.complement();
  return rep;
}

VisibilityEngine::VisibilityEngine(const PointWindow& window, double eps, double horizon)
    : window_(&window), eps_(eps), horizon_(horizon) {
  require_positive(eps, horizon);
  if (!std::isfinite(horizon)) {
    throw LabError(ErrorKind::InvalidInput, "certificate engine needs a finite horizon");
  }
  const double cell = std::max(SpatialGrid::suggested_cell_size(window.size(), window.radius()), 0.25 * eps);
  grid_ = SpatialGrid(window.points(), cell);
  sorted_of_original_.resize(window.size());
  const auto idx = grid_.sorted_indices();
  for (std::size_t k = 0; k < idx.size(); ++k) sorted_of_original_[idx[k]] = static_cast<std::uint32_t>(k);
}

VisibilityEngine::Scratch VisibilityEngine::make_scratch() const {
  Scratch s;
  s.stamp.assign(window_->size(), 0);
  return s;
}

BlockedCertificate VisibilityEngine::certify(Point x, Scratch& scratch,
                                             std::optional<std::uint32_t> tangent_center) const {
  return run(x, scratch, tangent_center);
}

ArcSet VisibilityEngine::free_set(Point x, Scratch& scratch,
                                  std::optional<std::uint32_t> tangent_center) const {
  return run(x, scratch, tangent_center).uncovered;
}

BlockedCertificate VisibilityEngine::run(Point x, Scratch& scratch,
                                         std::optional<std::uint32_t> tangent_center) const {
  require_horizon_margin(x, window_->radius(), eps_, horizon_);
  if (scratch.stamp.size() != window_->size()) scratch = make_scratch();
  if (++scratch.epoch == 0) {
    std::fill(scratch.stamp.begin(), scratch.stamp.end(), 0);
    scratch.epoch = 1;
  }
  const std::uint32_t epoch = scratch.epoch;
  auto& stamp = scratch.stamp;

  BlockedCertificate out;
  ArcSet free = ArcSet::full();
  const auto pts = grid_.sorted_points();

  if (tangent_center) {
    if (*tangent_center >= window_->size()) throw LabError(ErrorKind::BadIndex, "tangent centre out of range");
    const std::uint32_t k = sorted_of_original_[*tangent_center];
    stamp[k] = epoch;
    const Point rel = pts[k] - x;
    free.remove_centered(std::atan2(rel.y, rel.x), kPi / 2);
    ++out.obstacles_examined;
  }

  const double reach = horizon_ + eps_;
  const double reach2 = reach * reach;
  bool done = false;
  auto process_cell = [&](int ix, int iy) {
    const auto [b, e] = grid_.cell_range(ix, iy);
    for (std::size_t k = b; k < e; ++k) {
      if (stamp[k] == epoch) continue;
      stamp[k] = epoch;
      const Point rel = pts[k] - x;
      const double d2 = norm_squared(rel);
      if (d2 > reach2) continue;
      const double d = std::sqrt(d2);
      if (d < kIdentityTolerance) continue;
      const double h = blocked_half_width_at(d, eps_, horizon_);
      if (h <= 0.0) continue;
      ++out.obstacles_examined;
      if (h >= kPi) {
        free = ArcSet::empty();
      } else {
        free.remove_centered(std::atan2(rel.y, rel.x), h);
      }
      if (free.is_empty()) {
        done = true;
        return;
      }
    }
  };

  auto visit_box = [&](double x0, double x1, double y0, double y1) {
    const int cx0 = std::max(0, grid_.cell_x(x0)), cx1 = std::min(grid_.nx() - 1, grid_.cell_x(x1));
    const int cy0 = std::max(0, grid_.cell_y(y0)), cy1 = std::min(grid_.ny() - 1, grid_.cell_y(y1));
    for (int iy = cy0; iy <= cy1 && !done; ++iy) {
      for (int ix = cx0; ix <= cx1 && !done; ++ix) process_cell(ix, iy);
    }
  };

  auto visit_polygon = [&](const Vec2* poly, int n) {
    double ymin = poly[0].y, ymax = poly[0].y;
    for (int i = 1; i < n; ++i) {
      ymin = std::min(ymin, poly[i].y);
      ymax = std::max(ymax, poly[i].y);
    }
    const double cell = grid_.cell_size();
    const int cy0 = std::max(0, grid_.cell_y(ymin)), cy1 = std::min(grid_.ny() - 1, grid_.cell_y(ymax));
    for (int iy = cy0; iy <= cy1 && !done; ++iy) {
      const double y0 = grid_.cell_y0(iy) - 1e-9 * cell, y1 = grid_.cell_y0(iy + 1) + 1e-9 * cell;
      double xmin, xmax;
      if (!strip_extent(poly, n, std::max(y0, ymin), std::min(y1, ymax), xmin, xmax)) continue;
      const int cx0 = std::max(0, grid_.cell_x(xmin)), cx1 = std::min(grid_.nx() - 1, grid_.cell_x(xmax));
      for (int ix = cx0; ix <= cx1 && !done; ++ix) process_cell(ix, iy);
    }
  };

  if (!pts.empty()) {
    const double r0 = std::max(2.0 * grid_.cell_size(), 2.0 * eps_);
    for (double r = std::min(r0, reach);; r = std::min(2.0 * r, reach)) {
      const std::vector<Arc> arcs = free.arcs();
      for (const Arc& arc : arcs) {
        if (done) break;
        const double half = 0.5 * arc.width();
        if (half >= kWideHalfAngle) {
          visit_box(x.x - r, x.x + r, x.y - r, x.y + r);
          continue;
        }
        // Every obstacle within eps of a length-T segment in this arc, and no
        // farther than r from x, lies in this trapezoid (axis u along the arc
        // centre): -eps <= u <= r, |v| <= u tan(half) + eps / cos(half).
        const double mid = arc.start + half;
        const Vec2 c{std::cos(mid), std::sin(mid)}, nrm{-c.y, c.x};
        const double slack = 1e-9 * (1.0 + r);
        const double sec = 1.0 / std::cos(half);
        const double u0 = -eps_ - slack, u1 = r + slack;
        const double h0 = eps_ * sec + slack, h1 = r * std::tan(half) + eps_ * sec + slack;
        auto at = [&](double u, double v) { return Vec2{x.x + u * c.x + v * nrm.x, x.y + u * c.y + v * nrm.y}; };
        const Vec2 poly[4] = {at(u0, -h0), at(u1, -h1), at(u1, h1), at(u0, h0)};
        visit_polygon(poly, 4);
      }
      if (done || r >= reach) break;
    }
  }

  out.certified_hidden = free.is_empty();
  out.uncovered = std::move(free);
  return out;
}

BlockedCertificate t_blocked_certificate(Point x, const PointWindow& window, double eps, double T) {
  require_positive(eps, T);
  if (!std::isfinite(T)) throw LabError(ErrorKind::InvalidInput, "certificate needs a finite horizon");
  require_horizon_margin(x, window.radius(), eps, T);
  const VisibilityEngine engine(window, eps, T);
  auto scratch = engine.make_scratch();
  return engine.certify(x, scratch);
}

HiddenSearchResult hidden_search(const PointWindow& window, double eps, double T,
                                 const CandidateSpec& spec, int threads) {
  require_positive(eps, T);
  if (!std::isfinite(T)) throw LabError(ErrorKind::InvalidInput, "hidden search needs a finite horizon");
  const double admissible = window.radius() - T - eps;
  if (admissible < 0.0) {
    throw LabError(ErrorKind::NoAdmissibleRegion, "window radius is smaller than T + eps");
  }

  struct Candidate {
    Point p;
    std::optional<std::uint32_t> center;
  };
  std::vector<Candidate> cands;
  if (spec.mode == CandidateMode::Grid) {
    if (!(spec.spacing > 0.0)) throw LabError(ErrorKind::BadParam, "grid spacing must be positive");
    const std::int64_t n = static_cast<std::int64_t>(std::floor(admissible / spec.spacing));
    if (n > 20000) throw LabError(ErrorKind::BadParam, "grid spacing too fine for the window");
    for (std::int64_t i = -n; i <= n; ++i) {
      for (std::int64_t j = -n; j <= n; ++j) {
        const Point c{spec.spacing * static_cast<double>(i), spec.spacing * static_cast<double>(j)};
        if (norm(c) + T + eps <= window.radius()) cands.push_back({c, std::nullopt});
      }
    }
  } else {
    if (spec.samples_per_circle < 1) throw LabError(ErrorKind::BadParam, "samples per circle must be >= 1");
    const auto pts = window.points();
    for (std::uint32_t zi = 0; zi < pts.size(); ++zi) {
      const Point z = pts[zi];
      if (norm(z) + eps + T + eps > window.radius()) continue;
      for (int s = 0; s < spec.samples_per_circle; ++s) {
        const double a = kTwoPi * s / spec.samples_per_circle;
        const Point p = z + Point{eps * std::cos(a), eps * std::sin(a)};
        if (norm(p) + T + eps <= window.radius()) cands.push_back({p, zi});
      }
    }
  }
  if (cands.empty()) throw LabError(ErrorKind::NoAdmissibleRegion, "no candidate fits inside the window");

  const VisibilityEngine engine(window, eps, T);
  std::vector<char> hidden(cands.size(), 0);
  const int workers = std::max(1, threads);
  std::vector<VisibilityEngine::Scratch> scratch(static_cast<std::size_t>(workers));
  parallel_for(cands.size(), workers, [&](std::size_t b, std::size_t e, int w) {
    auto& s = scratch[static_cast<std::size_t>(w)];
    for (std::size_t i = b; i < e; ++i) {
      hidden[i] = engine.certify(cands[i].p, s, cands[i].center).certified_hidden ? 1 : 0;
    }
  });

  HiddenSearchResult res;
  res.candidates = cands.size();
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (hidden[i]) res.hidden.push_back({cands[i].p, cands[i].center});
  }
  std::stable_sort(res.hidden.begin(), res.hidden.end(),
                   [](const HiddenPoint& a, const HiddenPoint& b) { return lex_less(a.point, b.point); });
  return res;
}

InverseNormSum inverse_norm_sum_and_bound(const PointWindow& window, Point x, double eps) {
  require_positive(eps, kInfinity);
  InverseNormSum out;
  // Neumaier-compensated sum in window order.
  double sum = 0.0, comp = 0.0;
  double min_d = kInfinity;
  for (const Point& y : window.points()) {
    const double d = distance(y, x);
    if (d < kIdentityTolerance) continue;
    min_d = std::min(min_d, d);
    const double term = 1.0 / d;
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  if (!(eps < min_d)) {
    throw LabError(ErrorKind::EpsilonTooLarge, "eps must be smaller than every obstacle distance");
  }
  out.partial_sum = sum + comp;
  out.min_distance = min_d;
  out.blocked_measure = visibility_arcs(x, window, eps, kInfinity).blocked.measure();
  out.bound = kPi * eps * out.partial_sum;
  return out;
}

}  // namespace obstruction_lab
