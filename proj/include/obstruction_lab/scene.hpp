#pragma once

// Scene files: a point window plus generator provenance and free-form
// annotations, stored as JSON. Unknown keys at the top level and inside
// "window" are carried through load/save unchanged.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "obstruction_lab/point_window.hpp"

namespace obstruction_lab {

inline constexpr int kSceneFormatVersion = 1;

struct Scene {
  int format_version = kSceneFormatVersion;
  PointWindow window;
  std::vector<std::pair<std::string, std::string>> annotations;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();         // unknown top-level keys
  nlohmann::ordered_json window_extra = nlohmann::ordered_json::object();  // unknown keys in "window"

  bool operator==(const Scene&) const = default;
};

// Shortest decimal that parses back to the same double.
std::string format_number(double x);

// ParseError (with line and column) on malformed JSON or schema violations,
// VersionError on an unsupported format_version.
Scene parse_scene(const std::string& text);
std::string serialize_scene(const Scene& scene);

// IoError when the file cannot be read or written.
Scene load_scene(const std::filesystem::path& path);
void save_scene(const Scene& scene, const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace obstruction_lab
