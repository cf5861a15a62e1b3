#include <cmath>

#include "obstruction_lab/dark_forest.hpp"

namespace obstruction_lab {

double round_up_to_multiple(double R, double eps) {
  if (!(R > 0.0) || !(eps > 0.0)) throw LabError(ErrorKind::BadParam, "R and eps must be positive");
  const double q = R / eps;
  double n = std::ceil(q);
  if (n - q > 1.0 - 1e-9) n -= 1.0;  // q was an integer up to rounding
  return std::max(1.0, n) * eps;
}

ForestConstants forest_constants(double eps, double R) {
  if (!(eps > 0.0) || !(R > 0.0) || !std::isfinite(eps) || !std::isfinite(R)) {
    throw LabError(ErrorKind::BadParam, "eps and R must be finite and positive");
  }
  const double q = R / eps;
  const double qn = std::round(q);
  if (qn < 1.0 || std::abs(q - qn) > 1e-9) {
    throw LabError(ErrorKind::NotMultiple, "R must be a positive integer multiple of eps");
  }
  ForestConstants fc;
  fc.eps = eps;
  fc.R = R;
  fc.N = 2 * static_cast<std::int64_t>(qn);
  fc.tangent_delta = eps * eps / (128.0 * R * R);
  fc.C = 1.0 / (4.0 * R * R);
  fc.mu = eps * fc.tangent_delta * fc.tangent_delta / 4.0;
  fc.c = fc.mu * fc.mu / (512.0 * eps * R * R);
  const double N = static_cast<double>(fc.N);
  // log2(4N) - log2(4N - 1) = -log2(1 - 1/(4N)), evaluated without cancellation.
  const double gap = -std::log1p(-1.0 / (4.0 * N)) / std::log(2.0);
  fc.j_quotient = (33.0 + 10.0 * std::log2(N)) / gap;
  fc.j = static_cast<std::int64_t>(std::ceil(fc.j_quotient));
  fc.log2_T_min = std::log2(eps) - 1.0 + static_cast<double>(fc.j) * std::log2(4.0 * N);
  fc.log2_mgon_count = 5.0 + fc.log2_T_min - std::log2(fc.mu);
  return fc;
}

DjConstants dj_constants(std::int64_t k, double c, double eta) {
  if (k < 2) throw LabError(ErrorKind::BadParam, "k must be >= 2");
  if (!(c > 0.0) || !(eta > 0.0) || !std::isfinite(c) || !std::isfinite(eta)) {
    throw LabError(ErrorKind::BadParam, "c and eta must be finite and positive");
  }
  DjConstants d;
  const double kd = static_cast<double>(k);
  d.r = kd / (kd - 1.0);
  d.quotient = std::log2(2.0 / (c * eta)) / std::log2(d.r);
  d.j = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(d.quotient)));
  d.log2_Z0 = std::log2(2.0 * eta) + static_cast<double>(d.j) * std::log2(kd);
  d.Z0 = 2.0 * eta * std::pow(kd, static_cast<double>(d.j));
  return d;
}

}  // namespace obstruction_lab
