#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wsp/geometry.hpp"
#include "wsp/graph.hpp"
#include "wsp/refine.hpp"

namespace wsp {

/// One point per non-blank line, comma-separated decimals. Rows are
/// numbered by line in error messages.
std::vector<Point> parse_points_csv(const std::string& text);
/// A JSON array of equal-length numeric arrays.
std::vector<Point> parse_points_json(const std::string& text);
/// JSON when the first non-space character is '[', CSV otherwise.
std::vector<Point> parse_points(const std::string& text);
/// Reads and parses a file; more than max_points rows is a resource error.
std::vector<Point> load_points(const std::string& path, std::size_t max_points);

/// Rejects exact duplicates and points closer than 1e-12 times the diameter.
/// `rows` gives the row number of each point for messages (1-based index
/// when empty).
void reject_duplicates(const std::vector<Point>& points, const std::vector<std::size_t>& rows = {});

std::string graph_to_json(const GraphDump& graph);
GraphDump graph_from_json(const std::string& text);

std::string stats_to_json(const RunStats& stats);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace wsp
