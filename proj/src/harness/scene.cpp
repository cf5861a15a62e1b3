#include "obstruction_lab/scene.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "obstruction_lab/errors.hpp"

namespace obstruction_lab {

using nlohmann::ordered_json;

std::string format_number(double x) {
  if (!std::isfinite(x)) throw LabError(ErrorKind::InvalidInput, "non-finite number cannot be written");
  if (x == 0.0) return "0";  // also folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw LabError(ErrorKind::ParseError, where + ": " + what);
}

double number_at(const ordered_json& j, const std::string& where) {
  if (!j.is_number()) schema_error(where, "expected a number");
  return j.get<double>();
}

std::optional<double> optional_number(const ordered_json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  return number_at(*it, where + "." + key);
}

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

Scene parse_scene(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is one past the offending character.
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw LabError(ErrorKind::ParseError, "malformed JSON at " + line_col(text, at));
  }
  if (!doc.is_object()) schema_error("scene", "expected an object");

  Scene scene;
  const auto ver = doc.find("format_version");
  if (ver == doc.end() || !ver->is_number_integer()) schema_error("format_version", "expected an integer");
  scene.format_version = ver->get<int>();
  if (scene.format_version != kSceneFormatVersion) {
    throw LabError(ErrorKind::VersionError, "unsupported format_version " + std::to_string(scene.format_version) +
                                                " (supported: " + std::to_string(kSceneFormatVersion) + ")");
  }

  Provenance prov;
  if (const auto g = doc.find("generator"); g != doc.end()) {
    if (!g->is_object()) schema_error("generator", "expected an object");
    if (const auto t = g->find("tag"); t != g->end()) {
      if (!t->is_string()) schema_error("generator.tag", "expected a string");
      prov.generator = t->get<std::string>();
    }
    if (const auto p = g->find("params"); p != g->end()) {
      if (!p->is_object()) schema_error("generator.params", "expected an object");
      for (const auto& [k, v] : p->items()) prov.params[k] = number_at(v, "generator.params." + k);
    }
    if (const auto s = g->find("seed"); s != g->end()) {
      if (!s->is_number_unsigned() && !(s->is_number_integer() && s->get<std::int64_t>() >= 0)) {
        schema_error("generator.seed", "expected a nonnegative integer");
      }
      prov.seed = s->get<std::uint64_t>();
    }
  }

  if (const auto a = doc.find("annotations"); a != doc.end()) {
    if (!a->is_object()) schema_error("annotations", "expected an object");
    for (const auto& [k, v] : a->items()) {
      if (!v.is_string()) schema_error("annotations." + k, "expected a string");
      scene.annotations.push_back({k, v.get<std::string>()});
    }
  }

  const auto w = doc.find("window");
  if (w == doc.end() || !w->is_object()) schema_error("window", "expected an object");
  const auto radius = w->find("radius");
  if (radius == w->end()) schema_error("window.radius", "missing");
  const double W = number_at(*radius, "window.radius");
  const auto sep = optional_number(*w, "declared_separation", "window");
  const auto dens = optional_number(*w, "declared_density_radius", "window");
  const auto pts = w->find("points");
  if (pts == w->end() || !pts->is_array()) schema_error("window.points", "expected an array");
  std::vector<Point> points;
  points.reserve(pts->size());
  for (std::size_t i = 0; i < pts->size(); ++i) {
    const auto& p = (*pts)[i];
    const std::string where = "window.points[" + std::to_string(i) + "]";
    if (!p.is_array() || p.size() != 2) schema_error(where, "expected [x, y]");
    points.push_back({number_at(p[0], where), number_at(p[1], where)});
  }
  try {
    scene.window = PointWindow(std::move(points), W, sep, dens, std::move(prov));
  } catch (const LabError& e) {
    schema_error("window", e.what());
  }

  for (const auto& [k, v] : w->items()) {
    if (k != "radius" && k != "declared_separation" && k != "declared_density_radius" && k != "points") {
      scene.window_extra[k] = v;
    }
  }
  for (const auto& [k, v] : doc.items()) {
    if (k != "format_version" && k != "generator" && k != "annotations" && k != "window") scene.extra[k] = v;
  }
  return scene;
}

std::string serialize_scene(const Scene& scene) {
  const PointWindow& w = scene.window;
  const Provenance& prov = w.provenance();
  std::ostringstream out;
  auto quote = [](const std::string& s) { return ordered_json(s).dump(); };
  out << "{\n";
  out << "  \"format_version\": " << scene.format_version << ",\n";
  out << "  \"generator\": {\"tag\": " << quote(prov.generator) << ", \"params\": {";
  bool first = true;
  for (const auto& [k, v] : prov.params) {
    out << (first ? "" : ", ") << quote(k) << ": " << format_number(v);
    first = false;
  }
  out << "}, \"seed\": " << prov.seed << "},\n";
  out << "  \"annotations\": {";
  first = true;
  for (const auto& [k, v] : scene.annotations) {
    out << (first ? "" : ", ") << quote(k) << ": " << quote(v);
    first = false;
  }
  out << "},\n";
  out << "  \"window\": {\n";
  out << "    \"radius\": " << format_number(w.radius()) << ",\n";
  if (w.declared_separation()) out << "    \"declared_separation\": " << format_number(*w.declared_separation()) << ",\n";
  if (w.declared_density_radius()) {
    out << "    \"declared_density_radius\": " << format_number(*w.declared_density_radius()) << ",\n";
  }
  for (const auto& [k, v] : scene.window_extra.items()) out << "    " << quote(k) << ": " << v.dump() << ",\n";
  out << "    \"points\": [";
  const auto pts = w.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out << (i == 0 ? "\n" : ",\n") << "      [" << format_number(pts[i].x) << ", " << format_number(pts[i].y) << "]";
  }
  out << (pts.empty() ? "]\n" : "\n    ]\n");
  out << "  }";
  for (const auto& [k, v] : scene.extra.items()) out << ",\n  " << quote(k) << ": " << v.dump();
  out << "\n}\n";
  return out.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LabError(ErrorKind::IoError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw LabError(ErrorKind::IoError, "error reading " + path.string());
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw LabError(ErrorKind::IoError, "cannot write " + path.string());
  out << content;
  out.flush();
  if (!out) throw LabError(ErrorKind::IoError, "error writing " + path.string());
}

Scene load_scene(const std::filesystem::path& path) { return parse_scene(read_file(path)); }

void save_scene(const Scene& scene, const std::filesystem::path& path) { write_file(path, serialize_scene(scene)); }

}  // namespace obstruction_lab
