#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "obstruction_lab/constructions.hpp"
#include "obstruction_lab/errors.hpp"

namespace obstruction_lab {

namespace {

using i128 = __int128;

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

double lattice_norm(LatticePoint p) { return norm(to_point(p)); }

// Removed points of one ray inside B(0, W), in order of n.
std::vector<LatticePoint> ray_points(LatticePoint z, std::int64_t m, double W) {
  std::vector<LatticePoint> out;
  const double w2 = W * W;
  // |z + n v| <= W needs n |v| <= W + |z|.
  const double vlen = std::sqrt(static_cast<double>(m) * static_cast<double>(m) + 1.0);
  const std::int64_t n_max = static_cast<std::int64_t>((W + lattice_norm(z)) / vlen) + 1;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const LatticePoint p{z.x + n * m, z.y + n};
    const double px = static_cast<double>(p.x), py = static_cast<double>(p.y);
    if (px * px + py * py <= w2) out.push_back(p);
  }
  return out;
}

std::uint64_t pack(std::int64_t x, std::int64_t y) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
         static_cast<std::uint32_t>(y);
}

}  // namespace

std::int64_t ray_pair_distance_squared(LatticePoint a, std::int64_t ma, LatticePoint b,
                                       std::int64_t mb, std::int64_t cap_squared) {
  // Q - P = (dx + n' mb - n ma, dy + n' - n). With d = n' - n the y part is
  // fixed and the x part is linear in n, so each d has a closed-form minimum.
  const i128 dx = b.x - a.x, dy = b.y - a.y;
  const i128 s = static_cast<i128>(mb) - ma;
  const i128 reach = static_cast<i128>(std::ceil(std::sqrt(static_cast<double>(cap_squared)))) + 1;
  i128 best = cap_squared;
  for (i128 d = -dy - reach; d <= -dy + reach; ++d) {
    const i128 yy = dy + d;
    if (yy * yy >= best) continue;
    const i128 n_min = std::max<i128>(1, 1 - d);
    const i128 c = d * mb + dx;  // x(n) = n s + c
    i128 cands[3] = {n_min, n_min, n_min};
    if (s != 0) {
      const i128 root = floor_div(-c, s);
      cands[1] = std::max(n_min, root);
      cands[2] = std::max(n_min, root + 1);
    }
    for (const i128 n : cands) {
      const i128 xx = n * s + c;
      const i128 d2 = xx * xx + yy * yy;
      if (d2 < best) best = d2;
    }
  }
  return static_cast<std::int64_t>(best);
}

PunctureResult puncture_construct(const PunctureParams& params,
                                  std::span<const LatticePoint> enumeration) {
  if (!(params.eps > 0.0 && params.eps <= 1.0)) throw LabError(ErrorKind::BadParam, "eps must be in (0, 1]");
  if (!(params.M > 1.0)) throw LabError(ErrorKind::BadParam, "M must exceed 1");
  if (params.K < 1) throw LabError(ErrorKind::BadParam, "K must be >= 1");
  if (!(params.window_radius > 0.0)) throw LabError(ErrorKind::BadParam, "window radius must be positive");
  if (enumeration.size() < static_cast<std::size_t>(params.K)) {
    throw LabError(ErrorKind::BadParam, "enumeration shorter than K");
  }
  if (!(params.M < 1e6)) throw LabError(ErrorKind::BadParam, "M too large for the exact separation check");

  PunctureResult res;
  const double M2 = params.M * params.M;
  const std::int64_t cap = static_cast<std::int64_t>(std::floor(M2)) + 1;
  for (int k = 1; k <= params.K; ++k) {
    const LatticePoint z = enumeration[static_cast<std::size_t>(k - 1)];
    double bound = 0.0;
    if (k == 1) {
      bound = std::max({params.M, 4.0 / params.eps, 2.0 * lattice_norm(z)});
    } else {
      bound = std::max({std::ldexp(1.0, k) / params.eps, 2.0 * lattice_norm(z),
                        static_cast<double>(res.m.back())});
    }
    if (!(bound < static_cast<double>(params.m_ceiling))) {
      throw LabError(ErrorKind::SearchOverflow, "lower bound for m_" + std::to_string(k) + " exceeds the ceiling");
    }
    std::int64_t m = static_cast<std::int64_t>(std::floor(bound)) + 1;
    for (;; ++m) {
      if (m > params.m_ceiling) {
        throw LabError(ErrorKind::SearchOverflow, "no admissible m_" + std::to_string(k) + " below the ceiling");
      }
      bool ok = true;
      for (std::size_t j = 0; j < res.m.size() && ok; ++j) {
        const std::int64_t d2 = ray_pair_distance_squared(res.z[j], res.m[j], z, m, cap);
        ok = static_cast<double>(d2) > M2;
      }
      if (ok) break;
    }
    res.m.push_back(m);
    res.z.push_back(z);
    res.lower_bounds.push_back(bound);
  }

  const double W = params.window_radius;
  std::unordered_set<std::uint64_t> removed_keys;
  for (std::size_t k = 0; k < res.m.size(); ++k) {
    for (const LatticePoint& p : ray_points(res.z[k], res.m[k], W)) {
      if (removed_keys.insert(pack(p.x, p.y)).second) res.removed_lattice.push_back(p);
    }
  }
  std::sort(res.removed_lattice.begin(), res.removed_lattice.end(),
            [](LatticePoint a, LatticePoint b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });

  std::vector<Point> kept, removed;
  for (const LatticePoint& p : lattice_points(W)) {
    if (!removed_keys.count(pack(p.x, p.y))) kept.push_back(to_point(p));
  }
  for (const LatticePoint& p : res.removed_lattice) removed.push_back(to_point(p));

  Provenance prov{"puncture",
                  {{"eps", params.eps}, {"M", params.M}, {"K", static_cast<double>(params.K)},
                   {"W", W}},
                  0};
  res.kept = PointWindow(std::move(kept), W, 1.0, std::sqrt(2.0), prov);
  res.removed = PointWindow(std::move(removed), W, params.M, std::nullopt, prov);
  return res;
}

PunctureCheck check_puncture(const PunctureParams& params, const PunctureResult& result) {
  PunctureCheck out;
  const double W = params.window_radius;
  const auto& rem = result.removed_lattice;

  // (2) growth of the removed set.
  std::vector<std::int64_t> n2;
  n2.reserve(rem.size());
  for (const LatticePoint& p : rem) n2.push_back(p.x * p.x + p.y * p.y);
  std::sort(n2.begin(), n2.end());
  const std::int64_t r_max = static_cast<std::int64_t>(std::floor(W));
  for (std::int64_t r = 1; r <= r_max; ++r) {
    const auto count = std::lower_bound(n2.begin(), n2.end(), r * r) - n2.begin();
    const double ratio = static_cast<double>(count) / (params.eps * static_cast<double>(r));
    if (ratio > out.growth_worst_ratio) {
      out.growth_worst_ratio = ratio;
      out.growth_worst_r = r;
    }
    if (!(static_cast<double>(count) < params.eps * static_cast<double>(r))) out.growth_ok = false;
  }

  // (4) separation inside the removed set.
  std::int64_t min_d2 = -1;
  for (std::size_t i = 0; i < rem.size(); ++i) {
    for (std::size_t j = i + 1; j < rem.size(); ++j) {
      const std::int64_t dx = rem[i].x - rem[j].x, dy = rem[i].y - rem[j].y;
      const std::int64_t d2 = dx * dx + dy * dy;
      if (min_d2 < 0 || d2 < min_d2) min_d2 = d2;
    }
  }
  if (min_d2 >= 0) {
    out.min_removed_distance = std::sqrt(static_cast<double>(min_d2));
    out.separation_ok = static_cast<double>(min_d2) >= params.M * params.M;
  }

  // Removed-point bitmap over [-R, R]^2.
  const std::int64_t R = static_cast<std::int64_t>(std::floor(W)) + 1;
  const std::int64_t side = 2 * R + 1;
  std::vector<bool> is_removed(static_cast<std::size_t>(side * side), false);
  auto slot = [&](std::int64_t x, std::int64_t y) {
    return static_cast<std::size_t>((y + R) * side + (x + R));
  };
  for (const LatticePoint& p : rem) is_removed[slot(p.x, p.y)] = true;
  const double w2 = W * W;
  auto kept_at = [&](std::int64_t x, std::int64_t y) {
    if (x < -R || x > R || y < -R || y > R) return false;
    const double fx = static_cast<double>(x), fy = static_cast<double>(y);
    return fx * fx + fy * fy <= w2 && !is_removed[slot(x, y)];
  };

  // (3) sqrt(2)-density of the kept set on a 0.25 grid of centers.
  const double inner = W - 2.0;
  if (inner >= 0.0) {
    const std::int64_t steps = static_cast<std::int64_t>(std::floor(inner / 0.25));
    for (std::int64_t j = -steps; j <= steps; ++j) {
      for (std::int64_t i = -steps; i <= steps; ++i) {
        const double cx = 0.25 * static_cast<double>(i), cy = 0.25 * static_cast<double>(j);
        if (cx * cx + cy * cy > inner * inner) continue;
        ++out.density_centers;
        const std::int64_t fx = static_cast<std::int64_t>(std::floor(cx));
        const std::int64_t fy = static_cast<std::int64_t>(std::floor(cy));
        // The four corners of the containing unit cell are within sqrt 2.
        if (kept_at(fx, fy) || kept_at(fx + 1, fy) || kept_at(fx, fy + 1) || kept_at(fx + 1, fy + 1)) {
          continue;
        }
        bool found = false;
        for (std::int64_t y = fy - 1; y <= fy + 2 && !found; ++y) {
          for (std::int64_t x = fx - 1; x <= fx + 2 && !found; ++x) {
            const double dx = static_cast<double>(x) - cx, dy = static_cast<double>(y) - cy;
            found = dx * dx + dy * dy <= 2.0 && kept_at(x, y);
          }
        }
        if (!found) out.density_ok = false;
      }
    }
  }

  // (1) line-distance witness for each z_k.
  const std::vector<LatticePoint> lattice = lattice_points(W);
  for (std::size_t k = 0; k < result.m.size(); ++k) {
    const LatticePoint z = result.z[k];
    const std::int64_t m = result.m[k];
    const double vlen = std::sqrt(static_cast<double>(m) * static_cast<double>(m) + 1.0);
    // Compare |cross| / vlen and plain norms via exact integers where possible.
    double best = kInfinity;
    for (const LatticePoint& p : lattice) {
      if (p == z || !kept_at(p.x, p.y)) continue;
      const i128 rx = p.x - z.x, ry = p.y - z.y;
      const i128 t = rx * m + ry;
      double d;
      if (t <= 0) {
        d = std::sqrt(static_cast<double>(rx * rx + ry * ry));
      } else {
        const i128 c = rx - ry * m;
        d = std::abs(static_cast<double>(c)) / vlen;
      }
      best = std::min(best, d);
    }
    const double bound = 1.0 / vlen;
    out.witness_distance.push_back(best);
    out.witness_bound.push_back(bound);
    if (!(best >= bound - 1e-9)) out.witness_ok = false;
  }
  return out;
}

}  // namespace obstruction_lab
