#pragma once

// Explicit obstacle sets: the logarithmic spiral, the punctured lattice and
// the reference scenes (lattice, perturbed lattice, Poisson), plus checks of
// their declared metric properties.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "obstruction_lab/point_window.hpp"

namespace obstruction_lab {

struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  bool operator==(const LatticePoint&) const = default;
};

inline Point to_point(LatticePoint p) {
  return {static_cast<double>(p.x), static_cast<double>(p.y)};
}

// ---- spiral ----

// y_k = r_k (cos phi_k, sin phi_k), r_k = k ln k, phi_k = sqrt(ln ln k).
// Throws BadIndex for k < 3 (phi_k is not real below that).
Point spiral_point(std::int64_t k);

struct SpiralParams {
  std::int64_t k_min = 3;
  std::int64_t k_max = 3;
};

// Window radius is r_{k_max}.
PointWindow spiral_window(const SpiralParams& params);

// #{k >= 3 : k ln k < r}, the spiral's growth count G(r), without
// materializing the points.
std::int64_t spiral_growth(double r);

// ---- Z^2 enumeration ----

// Z^2 in rings max(|i|,|j|) = 0, 1, 2, ..., each ring by angle in [0, 2pi)
// starting from the positive x axis. Prefix-closed: the first `count` terms.
std::vector<LatticePoint> ring_enumeration(std::size_t count);

// ---- punctured lattice ----

struct PunctureParams {
  double eps = 0.5;    // (0, 1]
  double M = 10.0;     // ray separation, > 1
  int K = 1;           // rays removed
  double window_radius = 50.0;
  std::int64_t m_ceiling = std::int64_t{1} << 40;
};

struct PunctureResult {
  std::vector<std::int64_t> m;
  std::vector<LatticePoint> z;
  std::vector<double> lower_bounds;   // the bound each m_k strictly exceeds
  PointWindow kept;                   // Y, lattice minus removed rays
  PointWindow removed;                // union of z_k + n (m_k, 1), n >= 1
  std::vector<LatticePoint> removed_lattice;  // same points, exact
};

// Each m_k is the smallest integer above its lower bound whose ray keeps
// distance > M from every earlier ray (checked exactly over the infinite
// rays). Throws SearchOverflow past params.m_ceiling, BadParam on invalid
// parameters or a too-short enumeration.
PunctureResult puncture_construct(const PunctureParams& params,
                                  std::span<const LatticePoint> enumeration);

// Exact squared distance between the infinite removed rays
// {a + n (ma, 1)} and {b + n (mb, 1)}, n >= 1, for ma != mb, capped at
// `cap_squared` (returns any value >= cap when farther than that).
std::int64_t ray_pair_distance_squared(LatticePoint a, std::int64_t ma, LatticePoint b,
                                       std::int64_t mb, std::int64_t cap_squared);

struct PunctureCheck {
  // (2): every integer r <= W has #removed(norm < r) < eps r.
  bool growth_ok = true;
  std::int64_t growth_worst_r = 0;
  double growth_worst_ratio = 0.0;  // max over r of count / (eps r)
  // (4): all removed pairs at distance >= M.
  bool separation_ok = true;
  double min_removed_distance = kInfinity;
  // (3): every 0.25-grid center in B(0, W - 2) has a kept point within sqrt 2.
  bool density_ok = true;
  std::int64_t density_centers = 0;
  // (1): for each k, dist of the ray from z_k along (m_k, 1) to kept points
  // other than z_k, against 1 / sqrt(m_k^2 + 1).
  bool witness_ok = true;
  std::vector<double> witness_distance;
  std::vector<double> witness_bound;
};

PunctureCheck check_puncture(const PunctureParams& params, const PunctureResult& result);

// ---- reference scenes ----

enum class WindowKind { Lattice, PerturbedLattice, Poisson };

struct WindowSpec {
  WindowKind kind = WindowKind::Lattice;
  double amplitude = 0.0;  // perturbed lattice, [0, 0.5)
  double intensity = 1.0;  // poisson, > 0
};

// Integer points of norm <= W in lexicographic order.
std::vector<LatticePoint> lattice_points(double W);

PointWindow generate_window(const WindowSpec& spec, double W, std::uint64_t seed);

// Drops each point independently with probability `fraction`. The declared
// separation survives, the density radius does not; the provenance seed
// becomes `seed`.
PointWindow delete_points(const PointWindow& window, double fraction, std::uint64_t seed);

// ---- verification ----

struct VerifyRequest {
  std::vector<double> growth_radii;
  bool separation = false;
  bool density = false;
};

struct GrowthSample {
  double r;
  std::int64_t count;  // #(Y cap open ball B(0, r))
};

struct VerifyReport {
  std::vector<GrowthSample> growth;
  std::optional<bool> separation_ok;
  std::optional<bool> density_ok;
  std::int64_t density_centers = 0;
};

// Throws MissingMetadata when a check lacks its declared value.
VerifyReport verify_window(const PointWindow& window, const VerifyRequest& request);

}  // namespace obstruction_lab
