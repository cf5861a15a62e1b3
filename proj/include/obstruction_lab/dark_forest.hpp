#pragma once

// The dense-forest constant cascade, tangential/frontal classification of
// points on obstacle circles, the interval-subdivision finder and the frontal
// census. Quantities too large for a double (T_min, Z_0 in general, the M-gon
// count) are carried as base-2 logarithms.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "obstruction_lab/arc_set.hpp"
#include "obstruction_lab/errors.hpp"
#include "obstruction_lab/point_window.hpp"

namespace obstruction_lab {

struct ForestConstants {
  double eps = 0.0;
  double R = 0.0;
  std::int64_t N = 0;          // 2R / eps
  double tangent_delta = 0.0;  // eps^2 / (2^7 R^2)
  double C = 0.0;              // 1 / (4 R^2)
  double mu = 0.0;             // eps delta^2 / 4 = eps^5 / (2^16 R^4)
  double c = 0.0;              // mu^2 / (2^9 eps R^2), the density fed to the subdivision step
  std::int64_t j = 0;
  double j_quotient = 0.0;     // (33 + 10 log2 N) / (log2(4N) - log2(4N - 1)) before the ceiling
  double log2_T_min = 0.0;     // log2((eps / 2) (4N)^j)
  double log2_mgon_count = 0.0;  // log2(32 T_min / mu)
};

// Throws NotMultiple unless R / eps is a positive integer within 1e-9, and
// BadParam for nonpositive input.
ForestConstants forest_constants(double eps, double R);

// Least multiple of eps that is >= R.
double round_up_to_multiple(double R, double eps);

enum class BoundaryKind { NotEpsVisible, TangentialBelow, TangentialAbove, Frontal };

std::string_view to_string(BoundaryKind kind) noexcept;

struct BoundaryClass {
  Point point;
  BoundaryKind kind = BoundaryKind::NotEpsVisible;
  std::optional<Ray> witness;
  bool tangential_below = false;  // some free direction in the lower tangent window
  bool tangential_above = false;
  bool frontal_ray = false;       // some free direction outside both windows
  double depth = 0.0;             // for a frontal witness: eps - dist(z, witness line)
  ArcSet free;
};

// Classifies p = z + eps (cos angle, sin angle) at horizon T. The centre z
// blocks the open half-plane of directions towards it; window points within
// 1e-9 of z are that same obstacle and are not counted twice.
BoundaryClass classify_boundary_point(Point z, double angle, const PointWindow& window,
                                      const ForestConstants& fc, double horizon);

// Same decision from an already computed free set at p.
BoundaryClass classify_from_free(Point z, double angle, const ArcSet& free, const ForestConstants& fc);

struct DjConstants {
  double r = 0.0;
  std::int64_t j = 0;
  double quotient = 0.0;  // log2(2 / (c eta)) / log2 r
  double Z0 = 0.0;        // 2 eta k^j (may be +inf)
  double log2_Z0 = 0.0;
};

DjConstants dj_constants(std::int64_t k, double c, double eta);

struct Subdivision {
  double J_lo = 0.0;
  double J_hi = 0.0;
  double x = 0.0;
  std::vector<double> hits;  // one element of A per sub-interval, left to right
};

class SubdivisionNotFound : public LabError {
 public:
  SubdivisionNotFound(const std::string& message, std::vector<double> ladder)
      : LabError(ErrorKind::NotFound, message), ladder_(std::move(ladder)) {}
  const std::vector<double>& ladder() const { return ladder_; }

 private:
  std::vector<double> ladder_;
};

// Scales x_t = 2 eta r^t, t = 0..j, smallest first; at each scale J is
// anchored with its left end at each a in A, then with its right end.
// Sub-intervals are [lo + i x, lo + (i + 1) x), the last one closed; the hit
// is the smallest element of A inside. A must be sorted.
Subdivision dj_find_subdivision(std::span<const double> A, double I_lo, double I_hi, std::int64_t k,
                                double eta);

// Independent check of the returned subdivision.
bool verify_subdivision(std::span<const double> A, double I_lo, double I_hi, std::int64_t k,
                        double eta, const Subdivision& s);

struct CircleCensus {
  Point z;
  std::uint32_t window_index = 0;
  int not_visible = 0;
  int tangential = 0;
  int frontal = 0;
  bool frontal_ray = false;
};

struct CensusResult {
  std::size_t total = 0;            // circles scanned
  std::size_t frontal = 0;          // circles with a frontal sample
  std::size_t tangential_only = 0;  // visible samples, none frontal
  std::size_t frontal_ray = 0;      // circles with a sample admitting a non-tangent free ray
  std::size_t hidden_circles = 0;   // circles with a not-visible sample
  std::vector<Point> hidden_witnesses;
  std::vector<CircleCensus> circles;  // sorted by z
};

CensusResult frontal_census(const PointWindow& window, const ForestConstants& fc, double T,
                            int samples_per_circle = 256, int threads = 1);

}  // namespace obstruction_lab
