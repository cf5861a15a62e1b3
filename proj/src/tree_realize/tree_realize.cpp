#include "obstruction_lab/tree_realize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "obstruction_lab/parallel.hpp"
#include "obstruction_lab/random.hpp"

namespace obstruction_lab {

namespace {

void require_direction(Point v) {
  if (!is_finite(v) || norm_squared(v) == 0.0) throw LabError(ErrorKind::BadDirection, "direction must be nonzero");
}

void require_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw LabError(ErrorKind::BadParam, "eps must be positive");
}

std::int64_t slices(double extent, double eps) {
  const double n = std::ceil(extent / eps);
  if (!(n >= 1.0) || n > 1e8) throw LabError(ErrorKind::BadParam, "bucket partition too fine");
  return static_cast<std::int64_t>(n);
}

std::int64_t n1_for(double r, double eps) { return slices(4.0 * r, eps); }
std::int64_t n2_for(Point v, double eps) { return slices(2.0 * norm(v), eps); }

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t a) {
  while (parent[a] != a) a = parent[a] = parent[parent[a]];
  return a;
}

}  // namespace

PlaneTree random_tree(std::size_t vertices, std::uint64_t seed) {
  PlaneTree tree;
  if (vertices == 0) return tree;
  auto rng = make_rng(seed, streams::kTree);
  tree.vertices.push_back({0, 0});
  for (std::size_t i = 1; i < vertices; ++i) {
    for (;;) {
      const auto parent = std::min(i - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(i)));
      const double a = uniform(rng, 0.0, kTwoPi), len = uniform(rng, 0.5, 2.0);
      const Point p = tree.vertices[parent] + Point{std::cos(a), std::sin(a)} * len;
      bool clear = true;
      for (const Point& q : tree.vertices) clear = clear && distance(p, q) >= 0.25;
      if (!clear) continue;
      tree.vertices.push_back(p);
      tree.edges.push_back({parent, i});
      break;
    }
  }
  return tree;
}

void validate_tree(const PlaneTree& tree) {
  const std::size_t n = tree.vertices.size();
  if (n == 0) throw LabError(ErrorKind::InvalidInput, "tree has no vertices");
  if (tree.edges.size() + 1 != n) throw LabError(ErrorKind::InvalidInput, "a tree on n vertices has n - 1 edges");
  for (const Point& p : tree.vertices) {
    if (!is_finite(p)) throw LabError(ErrorKind::InvalidInput, "tree vertex is not finite");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return tree.vertices[a].x < tree.vertices[b].x; });
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const Point pa = tree.vertices[order[a]], pb = tree.vertices[order[b]];
      if (pb.x - pa.x > kIdentityTolerance) break;
      if (same_point(pa, pb)) throw LabError(ErrorKind::InvalidInput, "tree vertices coincide");
    }
  }
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& [a, b] : tree.edges) {
    if (a >= n || b >= n) throw LabError(ErrorKind::InvalidInput, "edge endpoint out of range");
    const std::size_t ra = find_root(parent, a), rb = find_root(parent, b);
    if (ra == rb) throw LabError(ErrorKind::InvalidInput, "edges contain a cycle");
    parent[ra] = rb;
  }
}

DirectionFrame::DirectionFrame(Point v_) : v(v_) {
  require_direction(v);
  length = norm(v);
  unit = {v.x / length, v.y / length};
}

BucketGrid::BucketGrid(const PointWindow& window, Point v, double r, double eps)
    : frame_(v), r_(r), eps_(eps) {
  require_eps(eps);
  if (!(r > 0.0) || !std::isfinite(r)) throw LabError(ErrorKind::BadParam, "bucket radius must be positive");
  const std::int64_t n1 = n1_for(r, eps), n2 = n2_for(v, eps);
  if (n1 * n2 > (std::int64_t{1} << 28)) throw LabError(ErrorKind::BadParam, "bucket partition too fine");
  n1_ = static_cast<int>(n1);
  n2_ = static_cast<int>(n2);
  const std::size_t cells = static_cast<std::size_t>(n1 * n2);
  offsets_.assign(cells + 1, 0);
  const auto pts = window.points();
  std::vector<std::int64_t> flat(pts.size(), -1);
  for (std::size_t t = 0; t < pts.size(); ++t) {
    if (const auto c = cell_of(pts[t])) {
      flat[t] = static_cast<std::int64_t>(c->i - 1) * n2_ + (c->j - 1);
      ++offsets_[static_cast<std::size_t>(flat[t]) + 1];
    }
  }
  for (std::size_t c = 0; c < cells; ++c) offsets_[c + 1] += offsets_[c];
  members_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t t = 0; t < pts.size(); ++t) {
    if (flat[t] >= 0) members_[cursor[static_cast<std::size_t>(flat[t])]++] = static_cast<std::uint32_t>(t);
  }
}

std::optional<BucketGrid::Cell> BucketGrid::cell_of(Point y) const {
  if (!(norm_squared(y) < r_ * r_)) return std::nullopt;
  const double d1 = 2.0 * r_ / n1_;
  const int i = std::clamp(static_cast<int>(std::floor((frame_.pi2(y) + r_) / d1)), 0, n1_ - 1);
  const double u = frame_.pi1(y) / frame_.length;
  const double f = u - std::floor(u);
  const int j = std::clamp(static_cast<int>(std::floor(f * n2_)), 0, n2_ - 1);
  return Cell{i + 1, j + 1};
}

std::span<const std::uint32_t> BucketGrid::cell(int i, int j) const {
  if (i < 1 || j < 1 || i > n1_ || j > n2_) return {};
  const std::size_t f = static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n2_) +
                        static_cast<std::size_t>(j - 1);
  return std::span<const std::uint32_t>(members_).subspan(offsets_[f], offsets_[f + 1] - offsets_[f]);
}

std::int64_t BucketGrid::nearest_scale(Point z, Point w) const {
  return static_cast<std::int64_t>(std::floor((frame_.pi1(z) - frame_.pi1(w)) / frame_.length + 0.5));
}

PartnerIndex::PartnerIndex(const PointWindow& window, double eps) : window_(&window), eps_(eps) {
  require_eps(eps);
  const double cell = std::max(eps, SpatialGrid::suggested_cell_size(window.size(), window.radius()));
  grid_ = SpatialGrid(window.points(), cell);
}

std::optional<EdgeMatch> PartnerIndex::find(Point z, Point v, std::int64_t k_min) const {
  require_direction(v);
  // Targets z - k v with |z - k v| < W + eps: k strictly between the roots
  // of |v|^2 k^2 - 2 <z, v> k + |z|^2 - (W + eps)^2.
  const double reach = window_->radius() + eps_;
  const double a = norm_squared(v), b = dot(z, v), c = norm_squared(z) - reach * reach;
  const double disc = b * b - a * c;
  if (disc <= 0.0) return std::nullopt;
  const double root = std::sqrt(disc);
  const double k_hi = (b + root) / a;
  const double k_lo = (b - root) / a;
  if (k_hi - static_cast<double>(k_min) > 1e9) throw LabError(ErrorKind::SearchOverflow, "scale scan too long");
  if (k_hi < static_cast<double>(k_min) - 1.0) return std::nullopt;
  const std::int64_t first = std::max(k_min, static_cast<std::int64_t>(std::floor(k_lo)));
  const std::int64_t last = static_cast<std::int64_t>(std::ceil(k_hi));
  const auto pts = window_->points();
  for (std::int64_t k = first; k <= last; ++k) {
    const double kd = static_cast<double>(k);
    const Point t = z - v * kd;
    if (!(norm(t) < reach)) continue;
    const auto idx = grid_.nearest_within(t, eps_, z);
    if (!idx) continue;
    const Point w = pts[*idx];
    const double residual = norm((z - w) - v * kd);
    if (residual < eps_) return EdgeMatch{w, *idx, k, residual};
  }
  return std::nullopt;
}

std::optional<std::uint32_t> PartnerIndex::locate(Point p) const {
  std::optional<std::uint32_t> found;
  grid_.for_each_within(p, 2.0 * kIdentityTolerance, [&](std::uint32_t idx, Point q) {
    if (!found && same_point(p, q)) found = idx;
  });
  return found;
}

EdgeMatch realize_edge(Point z, Point v, double eps, std::int64_t min_scale, const PointWindow& window) {
  require_direction(v);
  require_eps(eps);
  if (min_scale < 1) throw LabError(ErrorKind::BadParam, "min_scale must be at least 1");
  const PartnerIndex index(window, eps);
  if (auto m = index.find(z, v, min_scale)) return *m;
  throw LabError(ErrorKind::NoPartner, "no partner inside the window");
}

ExceptionalSet exceptional_set(const PointWindow& window, Point v, double eps, std::int64_t min_scale,
                               double r, int threads) {
  require_direction(v);
  require_eps(eps);
  if (min_scale < 0) throw LabError(ErrorKind::BadParam, "min_scale must be nonnegative");
  if (!(r > 0.0) || r > window.radius()) throw LabError(ErrorKind::BadParam, "r must lie in (0, W]");
  ExceptionalSet out;
  out.n1 = n1_for(r, eps);
  out.n2 = n2_for(v, eps);
  if (min_scale > 1) {
    const auto delta = window.declared_separation();
    if (!delta || !(*delta > 0.0)) {
      throw LabError(ErrorKind::MissingSeparation, "scaled search needs a declared separation");
    }
    out.per_cell = static_cast<std::int64_t>(std::ceil(2.0 * static_cast<double>(min_scale) * norm(v) / *delta));
  }
  out.bound = out.n1 * out.n2 * out.per_cell;

  const auto pts = window.points();
  std::vector<std::uint32_t> inside;
  for (std::size_t t = 0; t < pts.size(); ++t) {
    if (norm_squared(pts[t]) < r * r) inside.push_back(static_cast<std::uint32_t>(t));
  }
  out.examined = inside.size();
  const PartnerIndex index(window, eps);
  std::vector<char> flag(inside.size(), 0);
  parallel_for(inside.size(), threads, [&](std::size_t b, std::size_t e, int) {
    for (std::size_t t = b; t < e; ++t) flag[t] = !index.find(pts[inside[t]], v, min_scale);
  });
  for (std::size_t t = 0; t < inside.size(); ++t) {
    if (flag[t]) out.indices.push_back(inside[t]);
  }
  std::sort(out.indices.begin(), out.indices.end(),
            [&](std::uint32_t a, std::uint32_t b) { return lex_less(pts[a], pts[b]); });
  for (std::uint32_t i : out.indices) out.exceptional.push_back(pts[i]);
  return out;
}

Realization realize_tree(const PlaneTree& tree, std::size_t root, Point y0, const PointWindow& window,
                         double eps) {
  require_eps(eps);
  const PartnerIndex index(window, eps);
  return realize_tree(tree, root, y0, index);
}

Realization realize_tree(const PlaneTree& tree, std::size_t root, Point y0, const PartnerIndex& index) {
  validate_tree(tree);
  const std::size_t n = tree.vertices.size();
  if (root >= n) throw LabError(ErrorKind::InvalidInput, "root out of range");
  const auto anchor = index.locate(y0);
  if (!anchor) throw LabError(ErrorKind::InvalidInput, "anchor is not a window point");

  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);  // (neighbour, edge)
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    adj[tree.edges[e].first].push_back({tree.edges[e].second, e});
    adj[tree.edges[e].second].push_back({tree.edges[e].first, e});
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());

  Realization out;
  out.eps = index.eps();
  out.assignment.assign(n, Point{});
  out.window_index.assign(n, 0);
  out.scalings.assign(tree.edges.size(), 0);
  out.residuals.assign(tree.edges.size(), 0.0);
  out.assignment[root] = index.window().points()[*anchor];
  out.window_index[root] = *anchor;

  std::vector<std::size_t> parent(n, n);
  std::vector<std::size_t> stack{root};
  while (!stack.empty()) {
    const std::size_t node = stack.back();
    stack.pop_back();
    std::vector<std::size_t> children;
    for (const auto& [c, e] : adj[node]) {
      if (c == parent[node]) continue;
      const Point v = tree.vertices[node] - tree.vertices[c];
      const auto m = index.find(out.assignment[node], v, 1);
      if (!m) throw RealizationFailed("no partner for the edge towards vertex " + std::to_string(c), c);
      out.assignment[c] = m->w;
      out.window_index[c] = m->index;
      out.scalings[e] = m->k;
      out.residuals[e] = m->residual;
      parent[c] = node;
      children.push_back(c);
    }
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

bool verify_realization(const PlaneTree& tree, const Realization& real) {
  if (real.assignment.size() != tree.vertices.size() || real.scalings.size() != tree.edges.size()) return false;
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    const auto [i, j] = tree.edges[e];
    const long double k = static_cast<long double>(real.scalings[e]);
    if (real.scalings[e] < 1) return false;
    const long double dx = (static_cast<long double>(real.assignment[i].x) - real.assignment[j].x) -
                           k * (static_cast<long double>(tree.vertices[i].x) - tree.vertices[j].x);
    const long double dy = (static_cast<long double>(real.assignment[i].y) - real.assignment[j].y) -
                           k * (static_cast<long double>(tree.vertices[i].y) - tree.vertices[j].y);
    if (!(dx * dx + dy * dy < static_cast<long double>(real.eps) * real.eps)) return false;
  }
  return true;
}

}  // namespace obstruction_lab
