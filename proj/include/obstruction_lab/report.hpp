#pragma once

// Experiment output: the result envelope, CSV tables and SVG plots.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "obstruction_lab/arc_set.hpp"
#include "obstruction_lab/geometry.hpp"

namespace obstruction_lab {

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

// RFC 4180: CRLF line ends, fields quoted when they hold a comma, quote or
// line break.
std::string to_csv(const Table& table);

struct ExperimentResult {
  std::string command;
  nlohmann::ordered_json args = nlohmann::ordered_json::object();
  std::optional<std::uint64_t> seed;
  nlohmann::ordered_json constants = nlohmann::ordered_json::object();
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  std::vector<Table> tables;
  double window_radius = 0.0;
  double wall_seconds = 0.0;  // kept out of result.json

  const Table* find_table(const std::string& name) const;
  // MissingTable when absent.
  const Table& table(const std::string& name) const;
};

// Deterministic envelope: everything except wall-clock time. Tables are
// listed by file name and row count; their contents go to <name>.csv.
std::string result_json(const ExperimentResult& result);

enum class SvgKind { Points, Arcs, Tree };

// Points: table "points" (x, y), optional "highlight" (x, y).
// Arcs: table "arcs" (start, end, state) around summary x, y.
// Tree: table "tree_edges" (x1, y1, x2, y2) and "tree_vertices" (x, y).
// Coordinates are rounded to 2 decimals, y is flipped, the viewBox is
// [-W, W]^2 with W the result's window radius.
std::string export_svg(const ExperimentResult& result, SvgKind kind);

// Writes result.json, one CSV per table and timing.json into `dir`.
void write_result(const ExperimentResult& result, const std::filesystem::path& dir);

}  // namespace obstruction_lab
