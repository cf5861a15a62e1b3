#include "obstruction_lab/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "obstruction_lab/errors.hpp"
#include "obstruction_lab/scene.hpp"

namespace obstruction_lab {

using nlohmann::ordered_json;

std::string to_csv(const Table& table) {
  std::string out;
  auto field = [&](const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
      out += s;
      return;
    }
    out += '"';
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
  };
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      field(cells[i]);
    }
    out += "\r\n";
  };
  line(table.columns);
  for (const auto& row : table.rows) line(row);
  return out;
}

const Table* ExperimentResult::find_table(const std::string& name) const {
  for (const Table& t : tables) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

const Table& ExperimentResult::table(const std::string& name) const {
  if (const Table* t = find_table(name)) return *t;
  throw LabError(ErrorKind::MissingTable, "result has no table '" + name + "'");
}

std::string result_json(const ExperimentResult& r) {
  ordered_json j;
  j["format_version"] = 1;
  j["command"] = r.command;
  j["args"] = r.args;
  if (r.seed) j["seed"] = *r.seed;
  if (!r.constants.empty()) j["constants"] = r.constants;
  j["summary"] = r.summary;
  ordered_json tables = ordered_json::array();
  for (const Table& t : r.tables) {
    tables.push_back({{"name", t.name}, {"file", t.name + ".csv"}, {"rows", t.rows.size()}});
  }
  j["tables"] = tables;
  return j.dump(2) + "\n";
}

namespace {

std::string q2(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

double cell_number(const Table& t, const std::vector<std::string>& row, const std::string& col) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (t.columns[i] != col) continue;
    if (i >= row.size()) break;
    double v = 0.0;
    const std::string& s = row[i];
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc()) throw LabError(ErrorKind::InvalidInput, "table " + t.name + ": bad number " + s);
    return v;
  }
  throw LabError(ErrorKind::MissingTable, "table " + t.name + " has no column " + col);
}

std::string cell_text(const Table& t, const std::vector<std::string>& row, const std::string& col) {
  for (std::size_t i = 0; i < t.columns.size() && i < row.size(); ++i) {
    if (t.columns[i] == col) return row[i];
  }
  throw LabError(ErrorKind::MissingTable, "table " + t.name + " has no column " + col);
}

std::string pt(double x, double y) { return q2(x) + "," + q2(-y); }

// Annular sector between radii r0 < r1 over angles [a, b] about c.
std::string sector_path(Point c, double r0, double r1, double a, double b) {
  std::ostringstream d;
  if (b - a >= kTwoPi - 1e-12) {
    d << "M" << pt(c.x + r1, c.y) << " A" << q2(r1) << "," << q2(r1) << " 0 1 0 " << pt(c.x - r1, c.y) << " A"
      << q2(r1) << "," << q2(r1) << " 0 1 0 " << pt(c.x + r1, c.y) << " Z M" << pt(c.x + r0, c.y) << " A" << q2(r0)
      << "," << q2(r0) << " 0 1 0 " << pt(c.x - r0, c.y) << " A" << q2(r0) << "," << q2(r0) << " 0 1 0 "
      << pt(c.x + r0, c.y) << " Z";
    return d.str();
  }
  const int large = b - a > kPi ? 1 : 0;
  // With y flipped, counterclockwise in the plane is sweep flag 1 on screen.
  d << "M" << pt(c.x + r1 * std::cos(a), c.y + r1 * std::sin(a)) << " A" << q2(r1) << "," << q2(r1) << " 0 "
    << large << " 1 " << pt(c.x + r1 * std::cos(b), c.y + r1 * std::sin(b)) << " L"
    << pt(c.x + r0 * std::cos(b), c.y + r0 * std::sin(b)) << " A" << q2(r0) << "," << q2(r0) << " 0 " << large
    << " 0 " << pt(c.x + r0 * std::cos(a), c.y + r0 * std::sin(a)) << " Z";
  return d.str();
}

}  // namespace

std::string export_svg(const ExperimentResult& result, SvgKind kind) {
  const double W = result.window_radius > 0.0 ? result.window_radius : 1.0;
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" viewBox=\""
    << q2(-W) << " " << q2(-W) << " " << q2(2 * W) << " " << q2(2 * W) << "\">\n";
  s << "<circle cx=\"0.00\" cy=\"0.00\" r=\"" << q2(W) << "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\""
    << q2(W / 400) << "\"/>\n";
  const double dot = std::max(0.01, W / 300);
  auto point_group = [&](const Table& t, const char* id, const char* fill, double r) {
    s << "<g id=\"" << id << "\" fill=\"" << fill << "\">\n";
    for (const auto& row : t.rows) {
      const double x = cell_number(t, row, "x"), y = cell_number(t, row, "y");
      s << "<circle cx=\"" << q2(x) << "\" cy=\"" << q2(-y) << "\" r=\"" << q2(r) << "\"/>\n";
    }
    s << "</g>\n";
  };
  switch (kind) {
    case SvgKind::Points: {
      point_group(result.table("points"), "points", "#1f3b73", dot);
      if (const Table* h = result.find_table("highlight")) point_group(*h, "highlight", "#c0392b", 2 * dot);
      break;
    }
    case SvgKind::Arcs: {
      const Table& t = result.table("arcs");
      const Point c{result.summary.at("x").get<double>(), result.summary.at("y").get<double>()};
      const double r0 = W / 8, r1 = W / 4;
      s << "<g id=\"arcs\" fill-rule=\"evenodd\">\n";
      for (const auto& row : t.rows) {
        const double a = cell_number(t, row, "start");
        double b = cell_number(t, row, "end");
        if (b < a) b += kTwoPi;
        const std::string state = cell_text(t, row, "state");
        s << "<path d=\"" << sector_path(c, r0, r1, a, b) << "\" fill=\""
          << (state == "blocked" ? "#c0392b" : "#27ae60") << "\"/>\n";
      }
      s << "</g>\n";
      break;
    }
    case SvgKind::Tree: {
      const Table& e = result.table("tree_edges");
      s << "<g id=\"edges\" stroke=\"#1f3b73\" stroke-width=\"" << q2(W / 200) << "\">\n";
      for (const auto& row : e.rows) {
        s << "<line x1=\"" << q2(cell_number(e, row, "x1")) << "\" y1=\"" << q2(-cell_number(e, row, "y1"))
          << "\" x2=\"" << q2(cell_number(e, row, "x2")) << "\" y2=\"" << q2(-cell_number(e, row, "y2")) << "\"/>\n";
      }
      s << "</g>\n";
      point_group(result.table("tree_vertices"), "vertices", "#c0392b", 2 * dot);
      break;
    }
  }
  s << "</svg>\n";
  return s.str();
}

void write_result(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw LabError(ErrorKind::IoError, "cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / "result.json", result_json(result));
  for (const Table& t : result.tables) write_file(dir / (t.name + ".csv"), to_csv(t));
  ordered_json timing;
  timing["wall_seconds"] = result.wall_seconds;
  write_file(dir / "timing.json", timing.dump(2) + "\n");
}

}  // namespace obstruction_lab
