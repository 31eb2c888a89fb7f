#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "apd/point_pattern.hpp"

namespace apd {

enum class PatternFormat { json, text };

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view s);

nlohmann::json pattern_to_json(const PointPattern& p);
/// Accepts a bare pattern object or a report whose "result" is one.
PointPattern pattern_from_json(const nlohmann::json& j);

/// Plain text: header "# dim=d window=lo..hi", optional "# label=...", one tuple per line.
std::string pattern_to_text(const PointPattern& p);
PointPattern pattern_from_text(std::istream& in);

std::string write_pattern(const PointPattern& p, PatternFormat format);
/// Reads either format; JSON is recognized by a leading '{'.
PointPattern read_pattern(std::istream& in);
PointPattern load_pattern(const std::filesystem::path& path);
void save_pattern(const PointPattern& p, const std::filesystem::path& path, PatternFormat format);

}  // namespace apd
