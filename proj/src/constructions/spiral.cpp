#include <cmath>

#include "obstruction_lab/constructions.hpp"
#include "obstruction_lab/errors.hpp"

namespace obstruction_lab {

namespace {
double spiral_radius(std::int64_t k) {
  const double kd = static_cast<double>(k);
  return kd * std::log(kd);
}
}  // namespace

Point spiral_point(std::int64_t k) {
  if (k < 3) throw LabError(ErrorKind::BadIndex, "spiral index must be >= 3");
  const double r = spiral_radius(k);
  const double phi = std::sqrt(std::log(std::log(static_cast<double>(k))));
  return {r * std::cos(phi), r * std::sin(phi)};
}

PointWindow spiral_window(const SpiralParams& params) {
  if (params.k_min < 3) throw LabError(ErrorKind::BadIndex, "spiral k_min must be >= 3");
  if (params.k_max < params.k_min) throw LabError(ErrorKind::BadIndex, "spiral k_max < k_min");
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(params.k_max - params.k_min + 1));
  double radius = 0.0;
  for (std::int64_t k = params.k_min; k <= params.k_max; ++k) {
    pts.push_back(spiral_point(k));
    radius = std::max(radius, norm(pts.back()));
  }
  Provenance prov{"spiral",
                  {{"k_min", static_cast<double>(params.k_min)},
                   {"k_max", static_cast<double>(params.k_max)}},
                  0};
  return PointWindow(std::move(pts), std::max(radius, spiral_radius(params.k_max)), std::nullopt,
                     std::nullopt, std::move(prov));
}

std::int64_t spiral_growth(double r) {
  if (!(r > spiral_radius(3))) return 0;
  // k ln k is increasing; bracket then bisect on the last k below r.
  std::int64_t lo = 3, hi = 4;
  while (spiral_radius(hi) < r) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (spiral_radius(mid) < r ? lo : hi) = mid;
  }
  return lo - 2;
}

}  // namespace obstruction_lab
