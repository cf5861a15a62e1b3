#include "obstruction_lab/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "obstruction_lab/constructions.hpp"
#include "obstruction_lab/dark_forest.hpp"
#include "obstruction_lab/errors.hpp"
#include "obstruction_lab/parallel.hpp"
#include "obstruction_lab/random.hpp"
#include "obstruction_lab/report.hpp"
#include "obstruction_lab/scene.hpp"
#include "obstruction_lab/tree_realize.hpp"
#include "obstruction_lab/visibility.hpp"

namespace obstruction_lab {

namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// JSON has no infinity; an unbounded horizon is written as null.
ordered_json number_or_null(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

std::string num(double x) { return format_number(x); }

struct Common {
  std::string scene_path;
  std::string out_dir;
  bool svg = false;
  std::optional<int> threads;
};

void add_output(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out_dir, "Output directory (result.json, CSV tables, timing.json)");
  cmd->add_flag("--svg", c.svg, "Also write plot.svg (needs --out)");
}

void add_threads(CLI::App* cmd, Common& c) {
  cmd->add_option("--threads", c.threads, "Worker threads (default: OBSTRUCTION_LAB_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
}

ordered_json scene_echo(const std::string& path, const Scene& s) {
  ordered_json j;
  j["path"] = path;
  j["generator"] = s.window.provenance().generator;
  j["seed"] = s.window.provenance().seed;
  j["points"] = s.window.size();
  j["radius"] = s.window.radius();
  return j;
}

Table points_table(const std::string& name, std::span<const Point> pts) {
  Table t{name, {"x", "y"}, {}};
  t.rows.reserve(pts.size());
  for (const Point& p : pts) t.add_row({num(p.x), num(p.y)});
  return t;
}

void emit(const ExperimentResult& r, const Common& c, std::ostream& out,
          const std::optional<ExperimentResult>& svg_source, SvgKind svg_kind) {
  if (c.out_dir.empty()) {
    if (c.svg) throw UsageError("--svg needs --out");
    out << result_json(r);
    return;
  }
  write_result(r, c.out_dir);
  if (c.svg) {
    write_file(std::filesystem::path(c.out_dir) / "plot.svg", export_svg(svg_source ? *svg_source : r, svg_kind));
  }
}

// ---- gen ----

struct GenOptions {
  std::string out;
  std::uint64_t seed = 0;
  double W = 0.0;
  double amplitude = 0.0;
  double intensity = 1.0;
  double delete_fraction = 0.0;
  std::int64_t kmin = 3, kmax = 3;
  double eps = 0.5, M = 10.0;
  int K = 1;
  std::vector<std::string> annotate;
};

int run_gen(const std::string& kind, const GenOptions& g, std::ostream& out) {
  Scene scene;
  if (kind == "spiral") {
    scene.window = spiral_window({g.kmin, g.kmax});
  } else if (kind == "puncture") {
    PunctureParams p;
    p.eps = g.eps;
    p.M = g.M;
    p.K = g.K;
    p.window_radius = g.W;
    const auto enumeration = ring_enumeration(static_cast<std::size_t>(std::max(1, g.K)));
    const PunctureResult res = puncture_construct(p, enumeration);
    scene.window = res.kept;
    std::string m, z;
    for (std::size_t k = 0; k < res.m.size(); ++k) {
      m += (k ? "," : "") + std::to_string(res.m[k]);
      z += (k ? ";" : "") + std::to_string(res.z[k].x) + " " + std::to_string(res.z[k].y);
    }
    scene.annotations.push_back({"m", m});
    scene.annotations.push_back({"z", z});
    scene.annotations.push_back({"removed_in_window", std::to_string(res.removed.size())});
  } else {
    WindowSpec spec;
    if (kind == "lattice") spec.kind = WindowKind::Lattice;
    if (kind == "perturbed") spec = {WindowKind::PerturbedLattice, g.amplitude, 1.0};
    if (kind == "poisson") spec = {WindowKind::Poisson, 0.0, g.intensity};
    scene.window = generate_window(spec, g.W, g.seed);
  }
  if (g.delete_fraction > 0.0) scene.window = delete_points(scene.window, g.delete_fraction, g.seed);
  for (const std::string& kv : g.annotate) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--annotate expects key=value, got '" + kv + "'");
    scene.annotations.push_back({kv.substr(0, eq), kv.substr(eq + 1)});
  }
  save_scene(scene, g.out);
  out << "wrote " << scene.window.size() << " points to " << g.out << "\n";
  return kExitOk;
}

// ---- tree files ----

PlaneTree load_tree(const std::string& path) {
  const std::string text = read_file(path);
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw LabError(ErrorKind::ParseError, "tree file " + path + ": " + e.what());
  }
  PlaneTree t;
  try {
    for (const auto& v : j.at("vertices")) t.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    for (const auto& e : j.at("edges")) t.edges.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>()});
  } catch (const nlohmann::json::exception& e) {
    throw LabError(ErrorKind::ParseError, "tree file " + path + ": expected {vertices: [[x, y]...], edges: [[i, j]...]}");
  }
  return t;
}

ordered_json tree_json(const PlaneTree& t) {
  ordered_json j;
  j["vertices"] = ordered_json::array();
  for (const Point& p : t.vertices) j["vertices"].push_back({p.x, p.y});
  j["edges"] = ordered_json::array();
  for (const auto& [a, b] : t.edges) j["edges"].push_back({a, b});
  return j;
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Obstruction lab: visibility among point obstacles"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "obstruction_lab 1.0");

  Common common;
  GenOptions gen;
  double eps = 0.0, T = kInfinity, x = 0.0, y = 0.0, R = 0.0;
  std::optional<double> R_opt, T_opt;
  bool round_up = false;
  double grid_spacing = 0.25;
  std::string mode = "grid";
  int samples = 256;
  std::size_t max_witnesses = 10000;
  std::optional<std::int64_t> dj_k;
  std::optional<double> dj_c, dj_eta;
  std::vector<double> growth;
  bool want_sep = false, want_density = false;
  std::string tree_path;
  std::optional<std::size_t> random_tree_n;
  std::optional<std::uint64_t> tree_seed;
  std::size_t root = 0;
  std::vector<double> y0;
  std::optional<std::size_t> anchors;
  std::optional<double> anchor_radius;
  std::uint64_t seed = 0;

  // gen
  CLI::App* g = app.add_subcommand("gen", "Generate a scene file");
  g->require_subcommand(1);
  auto gen_common = [&](CLI::App* s) {
    s->add_option("--out", gen.out, "Scene file to write")->required();
    s->add_option("--seed", gen.seed, "Generator seed");
    s->add_option("--annotate", gen.annotate, "key=value annotation (repeatable)");
  };
  auto gen_delete = [&](CLI::App* s) {
    s->add_option("--delete", gen.delete_fraction, "Drop each point with this probability")
        ->check(CLI::Range(0.0, 0.999999));
  };
  CLI::App* g_spiral = g->add_subcommand("spiral", "Logarithmic spiral points k_min..k_max");
  g_spiral->add_option("--kmin", gen.kmin, "First index (>= 3)");
  g_spiral->add_option("--kmax", gen.kmax, "Last index")->required();
  gen_common(g_spiral);
  CLI::App* g_lattice = g->add_subcommand("lattice", "Integer lattice in B(0, W)");
  g_lattice->add_option("--W", gen.W, "Window radius")->required();
  gen_common(g_lattice);
  gen_delete(g_lattice);
  CLI::App* g_perturbed = g->add_subcommand("perturbed", "Lattice with uniform perturbations");
  g_perturbed->add_option("--W", gen.W, "Window radius")->required();
  g_perturbed->add_option("--amplitude", gen.amplitude, "Perturbation amplitude in [0, 0.5)")->required();
  gen_common(g_perturbed);
  gen_delete(g_perturbed);
  CLI::App* g_poisson = g->add_subcommand("poisson", "Poisson process in B(0, W)");
  g_poisson->add_option("--W", gen.W, "Window radius")->required();
  g_poisson->add_option("--intensity", gen.intensity, "Points per unit area");
  gen_common(g_poisson);
  gen_delete(g_poisson);
  CLI::App* g_puncture = g->add_subcommand("puncture", "Lattice with K removed rays (every point visible)");
  g_puncture->add_option("--eps", gen.eps, "Growth parameter in (0, 1]");
  g_puncture->add_option("--M", gen.M, "Ray separation (> 1)");
  g_puncture->add_option("--K", gen.K, "Number of removed rays");
  g_puncture->add_option("--W", gen.W, "Window radius")->required();
  gen_common(g_puncture);

  // vis
  CLI::App* vis = app.add_subcommand("vis", "Free and blocked direction arcs at a point");
  vis->add_option("--scene", common.scene_path, "Scene file")->required();
  vis->add_option("--x", x, "Query point x")->required();
  vis->add_option("--y", y, "Query point y")->required();
  vis->add_option("--eps", eps, "Obstacle radius")->required();
  vis->add_option("--T", T_opt, "Horizon (default: unbounded)");
  add_output(vis, common);

  // hidden
  CLI::App* hid = app.add_subcommand("hidden", "Search for horizon-T eps-hidden points");
  hid->add_option("--scene", common.scene_path, "Scene file")->required();
  hid->add_option("--eps", eps, "Obstacle radius")->required();
  hid->add_option("--T", T, "Horizon")->required();
  hid->add_option("--grid", grid_spacing, "Candidate grid spacing");
  hid->add_option("--mode", mode, "Candidates: grid or circles")->check(CLI::IsMember({"grid", "circles"}));
  hid->add_option("--samples", samples, "Samples per circle in circles mode")->check(CLI::PositiveNumber);
  add_output(hid, common);
  add_threads(hid, common);

  // constants
  CLI::App* con = app.add_subcommand("constants", "Dense-forest and subdivision constants");
  con->add_option("--eps", eps, "eps");
  con->add_option("--R", R_opt, "Density radius (a multiple of eps)");
  con->add_flag("--round-up", round_up, "Round R up to the next multiple of eps");
  con->add_option("--k", dj_k, "Subdivision count k >= 2");
  con->add_option("--c", dj_c, "Density of A in I");
  con->add_option("--eta", dj_eta, "Gap scale eta");
  add_output(con, common);

  // census
  CLI::App* cen = app.add_subcommand("census", "Frontal/tangential census of obstacle circles");
  cen->add_option("--scene", common.scene_path, "Scene file")->required();
  cen->add_option("--eps", eps, "Obstacle radius")->required();
  cen->add_option("--R", R_opt, "Density radius (default: declared density radius rounded up)");
  cen->add_option("--T", T, "Horizon; circles with |z| <= T are scanned")->required();
  cen->add_option("--samples", samples, "Samples per circle")->check(CLI::PositiveNumber);
  cen->add_option("--max-witnesses", max_witnesses, "Rows kept in hidden_witnesses.csv");
  add_output(cen, common);
  add_threads(cen, common);

  // realize
  CLI::App* rea = app.add_subcommand("realize", "Realize a plane tree in the scene");
  rea->add_option("--scene", common.scene_path, "Scene file")->required();
  rea->add_option("--eps", eps, "Tolerance")->required();
  auto* tree_opt = rea->add_option("--tree", tree_path, "Tree JSON {vertices, edges}");
  auto* rand_opt = rea->add_option("--random-tree", random_tree_n, "Seeded random tree with this many vertices");
  tree_opt->excludes(rand_opt);
  rea->add_option("--tree-seed", tree_seed, "Seed of the random tree (default: --seed)");
  rea->add_option("--root", root, "Root vertex");
  auto* y0_opt = rea->add_option("--y0", y0, "Anchor point x,y (a scene point)")->expected(2)->delimiter(',');
  auto* anchors_opt = rea->add_option("--anchors", anchors, "Sample this many anchors instead of --y0");
  y0_opt->excludes(anchors_opt);
  rea->add_option("--anchor-radius", anchor_radius, "Anchors are drawn from points with norm <= this (default W/2)");
  rea->add_option("--seed", seed, "Anchor sampling seed");
  add_output(rea, common);
  add_threads(rea, common);

  // verify
  CLI::App* ver = app.add_subcommand("verify", "Check growth, separation and density of a scene");
  ver->add_option("scene", common.scene_path, "Scene file")->required();
  ver->add_option("--growth", growth, "Radius r for G(r) (repeatable)");
  ver->add_flag("--separation", want_sep, "Check the declared separation");
  ver->add_flag("--density", want_density, "Check the declared density radius");
  add_output(ver, common);

  // sum
  CLI::App* sum = app.add_subcommand("sum", "Inverse-norm sum and blocked-measure bound at a point");
  sum->add_option("--scene", common.scene_path, "Scene file")->required();
  sum->add_option("--x", x, "Query point x")->required();
  sum->add_option("--y", y, "Query point y")->required();
  sum->add_option("--eps", eps, "Obstacle radius")->required();
  add_output(sum, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    // A missing required flag is often a misspelt one; name the stray
    // arguments too.
    std::vector<std::string> stray;
    std::vector<const CLI::App*> apps{&app};
    while (!apps.empty()) {
      const CLI::App* a = apps.back();
      apps.pop_back();
      for (const std::string& s : a->remaining()) stray.push_back(s);
      for (const CLI::App* sub : a->get_subcommands()) apps.push_back(sub);
    }
    err << "usage error: " << e.what() << "\n";
    if (app.get_subcommands().empty() && !app.remaining().empty()) {
      err << "usage error: unknown subcommand " << app.remaining().front() << "\n";
    }
    for (const std::string& s : stray) {
      if (!s.empty() && s[0] == '-') err << "usage error: unrecognized argument " << s << "\n";
    }
    return kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

  try {
    if (g->parsed()) {
      for (CLI::App* s : {g_spiral, g_lattice, g_perturbed, g_poisson, g_puncture}) {
        if (s->parsed()) return run_gen(s->get_name(), gen, out);
      }
    }

    const int threads = resolve_threads(common.threads);
    ExperimentResult r;
    std::optional<ExperimentResult> svg_source;
    SvgKind svg_kind = SvgKind::Points;

    auto scene_for = [&](ordered_json& args) {
      Scene s = load_scene(common.scene_path);
      args["scene"] = scene_echo(common.scene_path, s);
      r.window_radius = s.window.radius();
      return s;
    };

    if (vis->parsed()) {
      r.command = "vis";
      const Scene s = scene_for(r.args);
      if (T_opt) T = *T_opt;
      r.args["x"] = x;
      r.args["y"] = y;
      r.args["eps"] = eps;
      r.args["T"] = number_or_null(T);
      const VisibilityReport rep = visibility_arcs({x, y}, s.window, eps, T);
      r.summary["x"] = x;
      r.summary["y"] = y;
      r.summary["visible"] = !rep.free.is_empty();
      r.summary["free_measure"] = rep.free.measure();
      r.summary["blocked_measure"] = rep.blocked.measure();
      r.summary["contributing_obstacles"] = rep.contributing_obstacles;
      r.summary["window_scoped"] = rep.window_scoped;
      r.summary["free"] = rep.free.to_text();
      r.summary["blocked"] = rep.blocked.to_text();
      Table arcs{"arcs", {"start", "end", "width", "state"}, {}};
      std::vector<std::pair<Arc, std::string>> all;
      for (const Arc& a : rep.free.arcs()) all.push_back({a, "free"});
      for (const Arc& a : rep.blocked.arcs()) all.push_back({a, "blocked"});
      std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first.start < b.first.start; });
      for (const auto& [a, state] : all) arcs.add_row({num(a.start), num(a.end), num(a.width()), state});
      r.tables.push_back(std::move(arcs));
      svg_kind = SvgKind::Arcs;
    } else if (hid->parsed()) {
      r.command = "hidden";
      const Scene s = scene_for(r.args);
      r.args["eps"] = eps;
      r.args["T"] = T;
      r.args["mode"] = mode;
      r.args["grid"] = grid_spacing;
      if (mode == "circles") r.args["samples"] = samples;
      CandidateSpec spec;
      spec.mode = mode == "grid" ? CandidateMode::Grid : CandidateMode::BoundaryCircles;
      spec.spacing = grid_spacing;
      spec.samples_per_circle = samples;
      const HiddenSearchResult res = hidden_search(s.window, eps, T, spec, threads);
      r.summary["candidates"] = res.candidates;
      r.summary["hidden"] = res.hidden.size();
      Table t{"hidden", {"x", "y", "center_index"}, {}};
      std::vector<Point> pts;
      for (const HiddenPoint& h : res.hidden) {
        t.add_row({num(h.point.x), num(h.point.y), h.center ? std::to_string(*h.center) : ""});
        pts.push_back(h.point);
      }
      r.tables.push_back(std::move(t));
      if (common.svg) {
        svg_source = r;
        svg_source->tables = {points_table("points", s.window.points()), points_table("highlight", pts)};
      }
    } else if (con->parsed()) {
      r.command = "constants";
      const bool forest = R_opt.has_value() || eps != 0.0;
      const bool dj = dj_k || dj_c || dj_eta;
      if (!forest && !dj) throw UsageError("constants needs --eps/--R and/or --k/--c/--eta");
      if (forest) {
        if (!R_opt) throw UsageError("--R is required with --eps");
        R = round_up ? round_up_to_multiple(*R_opt, eps) : *R_opt;
        r.args["eps"] = eps;
        r.args["R"] = *R_opt;
        r.args["round_up"] = round_up;
        const ForestConstants fc = forest_constants(eps, R);
        ordered_json f;
        f["eps"] = fc.eps;
        f["R"] = fc.R;
        f["N"] = fc.N;
        f["delta"] = fc.tangent_delta;
        f["C"] = fc.C;
        f["mu"] = fc.mu;
        f["c"] = fc.c;
        f["j"] = fc.j;
        f["j_quotient"] = fc.j_quotient;
        f["log2_T_min"] = fc.log2_T_min;
        f["log2_mgon_count"] = fc.log2_mgon_count;
        r.constants["forest"] = f;
      }
      if (dj) {
        if (!dj_k || !dj_c || !dj_eta) throw UsageError("--k, --c and --eta go together");
        r.args["k"] = *dj_k;
        r.args["c"] = *dj_c;
        r.args["eta"] = *dj_eta;
        const DjConstants d = dj_constants(*dj_k, *dj_c, *dj_eta);
        ordered_json o;
        o["r"] = d.r;
        o["j"] = d.j;
        o["quotient"] = d.quotient;
        o["Z0"] = number_or_null(d.Z0);
        o["log2_Z0"] = d.log2_Z0;
        r.constants["subdivision"] = o;
      }
    } else if (cen->parsed()) {
      r.command = "census";
      const Scene s = scene_for(r.args);
      if (!R_opt) {
        const auto dens = s.window.declared_density_radius();
        if (!dens) throw LabError(ErrorKind::MissingMetadata, "scene declares no density radius; pass --R");
        R = round_up_to_multiple(*dens, eps);
      } else {
        R = *R_opt;
      }
      r.args["eps"] = eps;
      r.args["R"] = number_or_null(R_opt.value_or(kInfinity));
      r.args["T"] = T;
      r.args["samples"] = samples;
      r.args["max_witnesses"] = max_witnesses;
      const ForestConstants fc = forest_constants(eps, R);
      r.constants["R"] = fc.R;
      r.constants["N"] = fc.N;
      r.constants["delta"] = fc.tangent_delta;
      r.constants["mu"] = fc.mu;
      const CensusResult c = frontal_census(s.window, fc, T, samples, threads);
      r.summary["total"] = c.total;
      r.summary["frontal"] = c.frontal;
      r.summary["tangential_only"] = c.tangential_only;
      r.summary["frontal_ray"] = c.frontal_ray;
      r.summary["hidden_circles"] = c.hidden_circles;
      r.summary["hidden_witnesses"] = c.hidden_witnesses.size();
      r.summary["frontal_fraction"] = c.total ? static_cast<double>(c.frontal) / c.total : 0.0;
      Table circles{"circles", {"x", "y", "window_index", "not_visible", "tangential", "frontal", "frontal_ray"}, {}};
      for (const CircleCensus& cc : c.circles) {
        circles.add_row({num(cc.z.x), num(cc.z.y), std::to_string(cc.window_index), std::to_string(cc.not_visible),
                         std::to_string(cc.tangential), std::to_string(cc.frontal), cc.frontal_ray ? "1" : "0"});
      }
      r.tables.push_back(std::move(circles));
      const std::size_t keep = std::min(max_witnesses, c.hidden_witnesses.size());
      r.tables.push_back(points_table("hidden_witnesses",
                                      std::span<const Point>(c.hidden_witnesses.data(), keep)));
      if (common.svg) {
        svg_source = r;
        std::vector<Point> frontal;
        for (const CircleCensus& cc : c.circles) {
          if (cc.frontal) frontal.push_back(cc.z);
        }
        std::vector<Point> zs;
        for (const CircleCensus& cc : c.circles) zs.push_back(cc.z);
        svg_source->tables = {points_table("points", zs), points_table("highlight", frontal)};
      }
    } else if (rea->parsed()) {
      r.command = "realize";
      const Scene s = scene_for(r.args);
      PlaneTree tree;
      if (!tree_path.empty()) {
        tree = load_tree(tree_path);
        r.args["tree"] = tree_path;
      } else if (random_tree_n) {
        const std::uint64_t ts = tree_seed.value_or(seed);
        tree = random_tree(*random_tree_n, ts);
        r.args["random_tree"] = *random_tree_n;
        r.args["tree_seed"] = ts;
      } else {
        throw UsageError("realize needs --tree or --random-tree");
      }
      if (*y0_opt && y0.size() != 2) throw UsageError("--y0 takes x,y");
      if (!*y0_opt && !anchors) throw UsageError("realize needs --y0 or --anchors");
      validate_tree(tree);
      r.args["eps"] = eps;
      r.args["root"] = root;
      r.constants["tree"] = tree_json(tree);
      const PartnerIndex index(s.window, eps);
      if (*y0_opt) {
        r.args["y0"] = {y0[0], y0[1]};
        const Realization real = realize_tree(tree, root, {y0[0], y0[1]}, index);
        r.summary["verified"] = verify_realization(tree, real);
        ordered_json rj;
        rj["assignment"] = ordered_json::array();
        for (const Point& p : real.assignment) rj["assignment"].push_back({p.x, p.y});
        rj["scalings"] = real.scalings;
        rj["residuals"] = real.residuals;
        r.summary["realization"] = rj;
        Table vt{"realization", {"vertex", "x", "y", "fx", "fy"}, {}};
        for (std::size_t v = 0; v < tree.vertices.size(); ++v) {
          vt.add_row({std::to_string(v), num(tree.vertices[v].x), num(tree.vertices[v].y), num(real.assignment[v].x),
                      num(real.assignment[v].y)});
        }
        Table et{"edges", {"edge", "from", "to", "k", "residual"}, {}};
        for (std::size_t e = 0; e < tree.edges.size(); ++e) {
          et.add_row({std::to_string(e), std::to_string(tree.edges[e].first), std::to_string(tree.edges[e].second),
                      std::to_string(real.scalings[e]), num(real.residuals[e])});
        }
        r.tables.push_back(std::move(vt));
        r.tables.push_back(std::move(et));
        if (common.svg) {
          svg_source = r;
          Table te{"tree_edges", {"x1", "y1", "x2", "y2"}, {}};
          for (const auto& [a, b] : tree.edges) {
            te.add_row({num(real.assignment[a].x), num(real.assignment[a].y), num(real.assignment[b].x),
                        num(real.assignment[b].y)});
          }
          svg_source->tables = {te, points_table("tree_vertices", real.assignment)};
        }
        svg_kind = SvgKind::Tree;
      } else {
        const double rad = anchor_radius.value_or(s.window.radius() / 2);
        r.args["anchors"] = *anchors;
        r.args["anchor_radius"] = rad;
        r.seed = seed;
        std::vector<Point> pool;
        for (const Point& p : s.window.points()) {
          if (norm(p) <= rad) pool.push_back(p);
        }
        if (pool.empty()) throw LabError(ErrorKind::EmptySet, "no scene point within the anchor radius");
        auto rng = make_rng(seed, streams::kAnchors);
        std::vector<Point> picks(*anchors);
        for (Point& p : picks) p = pool[std::min(pool.size() - 1, static_cast<std::size_t>(uniform01(rng) * pool.size()))];
        std::vector<int> status(picks.size(), 0);  // 1 verified, -1 realized but not verified, 0 failed
        std::vector<std::int64_t> failed(picks.size(), -1);
        std::vector<double> worst(picks.size(), 0.0);
        parallel_for(picks.size(), threads, [&](std::size_t b, std::size_t e, int) {
          for (std::size_t i = b; i < e; ++i) {
            try {
              const Realization real = realize_tree(tree, root, picks[i], index);
              status[i] = verify_realization(tree, real) ? 1 : -1;
              for (double res : real.residuals) worst[i] = std::max(worst[i], res);
            } catch (const RealizationFailed& f) {
              failed[i] = static_cast<std::int64_t>(f.vertex());
            }
          }
        });
        Table at{"anchors", {"x", "y", "realized", "verified", "failed_vertex", "max_residual"}, {}};
        std::size_t ok = 0, verified = 0;
        for (std::size_t i = 0; i < picks.size(); ++i) {
          ok += status[i] != 0;
          verified += status[i] == 1;
          at.add_row({num(picks[i].x), num(picks[i].y), status[i] != 0 ? "1" : "0", status[i] == 1 ? "1" : "0",
                      failed[i] >= 0 ? std::to_string(failed[i]) : "", status[i] != 0 ? num(worst[i]) : ""});
        }
        r.tables.push_back(std::move(at));
        r.summary["attempts"] = picks.size();
        r.summary["realized"] = ok;
        r.summary["verified"] = verified;
        r.summary["success_fraction"] = picks.empty() ? 0.0 : static_cast<double>(ok) / picks.size();
        if (common.svg) {
          svg_source = r;
          std::vector<Point> good;
          for (std::size_t i = 0; i < picks.size(); ++i) {
            if (status[i] != 0) good.push_back(picks[i]);
          }
          svg_source->tables = {points_table("points", picks), points_table("highlight", good)};
        }
      }
    } else if (ver->parsed()) {
      r.command = "verify";
      const Scene s = scene_for(r.args);
      r.args["growth"] = growth;
      r.args["separation"] = want_sep;
      r.args["density"] = want_density;
      const VerifyReport rep = verify_window(s.window, {growth, want_sep, want_density});
      ordered_json gj = ordered_json::array();
      Table t{"growth", {"r", "G"}, {}};
      for (const GrowthSample& gs : rep.growth) {
        gj.push_back({{"r", gs.r}, {"G", gs.count}});
        t.add_row({num(gs.r), std::to_string(gs.count)});
      }
      r.summary["growth"] = gj;
      if (rep.separation_ok) r.summary["separation_ok"] = *rep.separation_ok;
      if (rep.density_ok) {
        r.summary["density_ok"] = *rep.density_ok;
        r.summary["density_centers"] = rep.density_centers;
      }
      r.tables.push_back(std::move(t));
      if (common.svg) {
        svg_source = r;
        svg_source->tables = {points_table("points", s.window.points())};
      }
    } else if (sum->parsed()) {
      r.command = "sum";
      const Scene s = scene_for(r.args);
      r.args["x"] = x;
      r.args["y"] = y;
      r.args["eps"] = eps;
      const InverseNormSum res = inverse_norm_sum_and_bound(s.window, {x, y}, eps);
      r.summary["partial_sum"] = res.partial_sum;
      r.summary["blocked_measure"] = res.blocked_measure;
      r.summary["bound"] = res.bound;
      r.summary["min_distance"] = res.min_distance;
      r.summary["bound_holds"] = res.blocked_measure <= res.bound + 1e-9;
      if (common.svg) {
        svg_source = r;
        svg_source->tables = {points_table("points", s.window.points())};
      }
    }
    r.wall_seconds = elapsed();
    emit(r, common, out, svg_source, svg_kind);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const LabError& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::IoError ? kExitIo : kExitDomain;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace obstruction_lab
