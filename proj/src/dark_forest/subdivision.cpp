#include <algorithm>
#include <cmath>
#include <sstream>

#include "obstruction_lab/dark_forest.hpp"

namespace obstruction_lab {

namespace {

// Smallest element of sorted A in [lo, hi) (closed at hi when `closed`).
std::optional<double> first_in(std::span<const double> A, double lo, double hi, bool closed) {
  auto it = std::lower_bound(A.begin(), A.end(), lo);
  if (it == A.end()) return std::nullopt;
  if (*it < hi || (closed && *it == hi)) return *it;
  return std::nullopt;
}

std::optional<Subdivision> try_at(std::span<const double> A, double lo, std::int64_t k, double x) {
  Subdivision s;
  s.J_lo = lo;
  s.J_hi = lo + static_cast<double>(k) * x;
  s.x = x;
  for (std::int64_t i = 0; i < k; ++i) {
    const double a = lo + static_cast<double>(i) * x;
    const double b = i + 1 == k ? s.J_hi : lo + static_cast<double>(i + 1) * x;
    const auto hit = first_in(A, a, b, i + 1 == k);
    if (!hit) return std::nullopt;
    s.hits.push_back(*hit);
  }
  return s;
}

}  // namespace

Subdivision dj_find_subdivision(std::span<const double> A, double I_lo, double I_hi, std::int64_t k,
                                double eta) {
  if (k < 2) throw LabError(ErrorKind::BadParam, "k must be >= 2");
  if (!(eta > 0.0)) throw LabError(ErrorKind::BadParam, "eta must be positive");
  if (!(I_hi > I_lo)) throw LabError(ErrorKind::BadParam, "interval must have positive length");
  if (!std::is_sorted(A.begin(), A.end())) throw LabError(ErrorKind::BadParam, "A must be sorted");
  if (A.empty()) throw SubdivisionNotFound("A is empty", {});
  for (double a : A) {
    if (a < I_lo || a > I_hi) throw LabError(ErrorKind::BadParam, "A must lie inside I");
  }
  const double c = static_cast<double>(A.size()) / (I_hi - I_lo);
  const DjConstants dj = dj_constants(k, c, eta);
  std::vector<double> ladder;
  for (std::int64_t t = 0; t <= dj.j; ++t) ladder.push_back(2.0 * eta * std::pow(dj.r, static_cast<double>(t)));

  for (double x : ladder) {
    const double len = static_cast<double>(k) * x;
    if (len > I_hi - I_lo) break;
    for (double a : A) {
      if (a + len > I_hi) break;
      if (auto s = try_at(A, a, k, x)) return *s;
    }
    for (double a : A) {
      const double lo = a - len;
      if (lo < I_lo) continue;
      if (auto s = try_at(A, lo, k, x)) return *s;
    }
  }
  std::ostringstream msg;
  msg << "no subdivision on the scale ladder";
  for (double x : ladder) msg << ' ' << x;
  throw SubdivisionNotFound(msg.str(), ladder);
}

bool verify_subdivision(std::span<const double> A, double I_lo, double I_hi, std::int64_t k,
                        double eta, const Subdivision& s) {
  if (!(s.x >= 2.0 * eta)) return false;
  if (s.J_lo < I_lo || s.J_hi > I_hi) return false;
  const double len = static_cast<double>(k) * s.x;
  if (std::abs((s.J_hi - s.J_lo) - len) > 1e-12 * std::max(1.0, len)) return false;
  if (s.hits.size() != static_cast<std::size_t>(k)) return false;
  for (std::int64_t i = 0; i < k; ++i) {
    const double h = s.hits[static_cast<std::size_t>(i)];
    if (!std::binary_search(A.begin(), A.end(), h)) return false;
    const double a = s.J_lo + static_cast<double>(i) * s.x;
    const double b = s.J_lo + static_cast<double>(i + 1) * s.x;
    const bool last = i + 1 == k;
    if (h < a || h > b || (!last && h == b)) return false;
  }
  return true;
}

}  // namespace obstruction_lab
