#include <algorithm>
#include <cmath>

#include "obstruction_lab/constructions.hpp"
#include "obstruction_lab/errors.hpp"
#include "obstruction_lab/random.hpp"
#include "obstruction_lab/spatial_grid.hpp"

namespace obstruction_lab {

std::vector<LatticePoint> ring_enumeration(std::size_t count) {
  std::vector<LatticePoint> out;
  out.reserve(count);
  if (count == 0) return out;
  out.push_back({0, 0});
  for (std::int64_t n = 1; out.size() < count; ++n) {
    std::vector<std::pair<double, LatticePoint>> ring;
    ring.reserve(static_cast<std::size_t>(8 * n));
    for (std::int64_t i = -n; i <= n; ++i) {
      for (std::int64_t j = -n; j <= n; ++j) {
        if (std::max(std::abs(i), std::abs(j)) != n) continue;
        double a = std::atan2(static_cast<double>(j), static_cast<double>(i));
        if (a < 0.0) a += kTwoPi;
        ring.push_back({a, {i, j}});
      }
    }
    std::sort(ring.begin(), ring.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [a, p] : ring) {
      if (out.size() == count) break;
      out.push_back(p);
    }
  }
  return out;
}

std::vector<LatticePoint> lattice_points(double W) {
  std::vector<LatticePoint> out;
  if (!(W >= 0.0)) return out;
  const double w2 = W * W;
  const std::int64_t n = static_cast<std::int64_t>(std::floor(W));
  for (std::int64_t x = -n; x <= n; ++x) {
    const double fx = static_cast<double>(x);
    std::int64_t ymax = static_cast<std::int64_t>(std::floor(std::sqrt(std::max(0.0, w2 - fx * fx))));
    while (ymax >= 0 && fx * fx + static_cast<double>(ymax * ymax) > w2) --ymax;
    while (fx * fx + static_cast<double>((ymax + 1) * (ymax + 1)) <= w2) ++ymax;
    for (std::int64_t y = -ymax; y <= ymax; ++y) out.push_back({x, y});
  }
  return out;
}

namespace {

std::int64_t poisson_count(std::mt19937_64& rng, double mean) {
  // Inversion; callers keep the mean small.
  const double u = uniform01(rng);
  double p = std::exp(-mean), cdf = p;
  std::int64_t k = 0;
  while (u > cdf && k < 100000) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
    if (p == 0.0) break;
  }
  return k;
}

}  // namespace

PointWindow generate_window(const WindowSpec& spec, double W, std::uint64_t seed) {
  if (!(W > 0.0) || !std::isfinite(W)) throw LabError(ErrorKind::BadParam, "window radius must be positive");
  std::vector<Point> pts;
  switch (spec.kind) {
    case WindowKind::Lattice: {
      for (const LatticePoint& p : lattice_points(W)) pts.push_back(to_point(p));
      return PointWindow(std::move(pts), W, 1.0, std::sqrt(2.0), {"lattice", {{"W", W}}, seed});
    }
    case WindowKind::PerturbedLattice: {
      const double a = spec.amplitude;
      if (!(a >= 0.0 && a < 0.5)) throw LabError(ErrorKind::BadParam, "amplitude must be in [0, 0.5)");
      auto rng = make_rng(seed, streams::kPerturbed);
      for (const LatticePoint& lp : lattice_points(W)) {
        const double dx = uniform(rng, -a, a);
        const double dy = uniform(rng, -a, a);
        const Point p = to_point(lp) + Point{dx, dy};
        if (norm(p) <= W) pts.push_back(p);
      }
      return PointWindow(std::move(pts), W, 1.0 - 2.0 * a, std::sqrt(2.0),
                         {"perturbed", {{"W", W}, {"amplitude", a}}, seed});
    }
    case WindowKind::Poisson: {
      const double lambda = spec.intensity;
      if (!(lambda > 0.0) || !std::isfinite(lambda)) throw LabError(ErrorKind::BadParam, "intensity must be positive");
      auto rng = make_rng(seed, streams::kPoisson);
      const double s = std::min(1.0, std::sqrt(10.0 / lambda));
      const std::int64_t cells = static_cast<std::int64_t>(std::ceil(2.0 * W / s));
      if (static_cast<double>(cells) * static_cast<double>(cells) > 4e8) {
        throw LabError(ErrorKind::BadParam, "poisson window too large");
      }
      const double mean = lambda * s * s;
      for (std::int64_t j = 0; j < cells; ++j) {
        for (std::int64_t i = 0; i < cells; ++i) {
          const double x0 = -W + s * static_cast<double>(i), y0 = -W + s * static_cast<double>(j);
          const std::int64_t n = poisson_count(rng, mean);
          for (std::int64_t t = 0; t < n; ++t) {
            const double px = x0 + s * uniform01(rng);
            const double py = y0 + s * uniform01(rng);
            if (px * px + py * py <= W * W) pts.push_back({px, py});
          }
        }
      }
      return PointWindow(std::move(pts), W, std::nullopt, std::nullopt,
                         {"poisson", {{"W", W}, {"intensity", lambda}}, seed});
    }
  }
  throw LabError(ErrorKind::BadParam, "unknown window kind");
}

PointWindow delete_points(const PointWindow& window, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction < 1.0)) throw LabError(ErrorKind::BadParam, "deletion fraction must be in [0, 1)");
  auto rng = make_rng(seed, streams::kDeletion);
  std::vector<Point> pts;
  pts.reserve(window.size());
  for (const Point& p : window.points()) {
    if (uniform01(rng) >= fraction) pts.push_back(p);
  }
  Provenance prov = window.provenance();
  prov.params["delete_fraction"] = fraction;
  prov.seed = seed;
  return PointWindow(std::move(pts), window.radius(), window.declared_separation(), std::nullopt, prov);
}

VerifyReport verify_window(const PointWindow& window, const VerifyRequest& request) {
  VerifyReport rep;
  const auto pts = window.points();
  if (!request.growth_radii.empty()) {
    std::vector<double> norms;
    norms.reserve(pts.size());
    for (const Point& p : pts) norms.push_back(norm(p));
    std::sort(norms.begin(), norms.end());
    for (double r : request.growth_radii) {
      const auto count = std::lower_bound(norms.begin(), norms.end(), r) - norms.begin();
      rep.growth.push_back({r, static_cast<std::int64_t>(count)});
    }
  }
  if (request.separation) {
    const auto delta = window.declared_separation();
    if (!delta) throw LabError(ErrorKind::MissingMetadata, "separation check needs declared_separation");
    const double limit = *delta * (1.0 - 1e-12);
    bool ok = true;
    if (!pts.empty()) {
      const SpatialGrid grid(pts, *delta);
      for (std::size_t i = 0; i < pts.size() && ok; ++i) {
        grid.for_each_within(pts[i], limit, [&](std::uint32_t j, Point) {
          if (j != i) ok = false;
        });
      }
    }
    rep.separation_ok = ok;
  }
  if (request.density) {
    const auto R = window.declared_density_radius();
    if (!R) throw LabError(ErrorKind::MissingMetadata, "density check needs declared_density_radius");
    const double inner = window.radius() - *R;
    bool ok = true;
    if (inner >= 0.0) {
      const SpatialGrid grid(pts.empty() ? std::span<const Point>{} : pts, *R);
      const double h = *R / 4.0;
      const std::int64_t steps = static_cast<std::int64_t>(std::floor(inner / h));
      for (std::int64_t j = -steps; j <= steps && ok; ++j) {
        for (std::int64_t i = -steps; i <= steps; ++i) {
          const Point c{h * static_cast<double>(i), h * static_cast<double>(j)};
          if (norm(c) > inner) continue;
          ++rep.density_centers;
          if (!grid.any_within_closed(c, *R)) {
            ok = false;
            break;
          }
        }
      }
    }
    rep.density_ok = ok;
  }
  return rep;
}

}  // namespace obstruction_lab
