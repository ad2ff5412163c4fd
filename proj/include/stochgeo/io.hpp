#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stochgeo/hull.hpp"
#include "stochgeo/vec.hpp"

namespace stochgeo {

/// Shortest round-trip-exact decimal rendering used for all CSV output
/// (17 significant digits, C locale).
std::string format_g17(double x);

std::uint64_t fnv1a64(const std::string& s);
std::string fnv1a64_hex(const std::string& s);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Flat key=value configuration file: one assignment per line, '#' comments.
std::map<std::string, std::string> parse_config_file(const std::string& text);

/// Polytope interchange JSON: {"dim": d, "vertices": [[...],...]}, facets
/// optional and recomputed when absent.
std::string polytope_to_json(const Polytope& P);
Polytope polytope_from_json(const std::string& json_text);

/// Point list from the same JSON shape ("vertices" or "points" key).
std::vector<Vec> points_from_json(const std::string& json_text, int* dim_out);

std::string points_to_csv(const std::vector<Vec>& pts);

}  // namespace stochgeo
