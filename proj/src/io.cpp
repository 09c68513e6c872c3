#include "wsp/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "wsp/error.hpp"

namespace wsp {

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_number(const std::string& field, std::size_t row) {
  std::string_view text = field;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
    throw IngestionError("row " + std::to_string(row) + ": '" + field + "' is not a number", row);
  }
  if (!std::isfinite(value)) {
    throw IngestionError("row " + std::to_string(row) + ": non-finite value", row);
  }
  return value;
}

void check_arity(std::size_t got, std::size_t want, std::size_t row) {
  if (got != want) {
    throw IngestionError("row " + std::to_string(row) + ": expected " + std::to_string(want) +
                             " coordinates, found " + std::to_string(got),
                         row);
  }
}

json index_or_null(std::size_t v) { return v == kNoIndex ? json(nullptr) : json(v); }

std::size_t index_from(const json& j) {
  return j.is_null() ? kNoIndex : j.get<std::size_t>();
}

}  // namespace

std::vector<Point> parse_points_csv(const std::string& text) {
  std::vector<Point> points;
  std::vector<std::size_t> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t row = 0;
  std::size_t dim = 0;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    std::vector<double> coords;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      coords.push_back(parse_number(trim(std::string_view(line).substr(pos, comma - pos)), row));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (points.empty()) dim = coords.size();
    check_arity(coords.size(), dim, row);
    points.push_back(Eigen::Map<const Point>(coords.data(), static_cast<Eigen::Index>(coords.size())));
    rows.push_back(row);
  }
  reject_duplicates(points, rows);
  return points;
}

std::vector<Point> parse_points_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IngestionError(std::string("invalid JSON: ") + e.what(), 0);
  }
  if (!doc.is_array()) throw IngestionError("JSON input must be an array of points", 0);
  std::vector<Point> points;
  std::size_t dim = 0;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::size_t row = i + 1;
    const json& item = doc[i];
    if (!item.is_array()) {
      throw IngestionError("row " + std::to_string(row) + ": expected an array", row);
    }
    if (i == 0) dim = item.size();
    check_arity(item.size(), dim, row);
    Point p(static_cast<Eigen::Index>(dim));
    for (std::size_t k = 0; k < dim; ++k) {
      if (!item[k].is_number()) {
        throw IngestionError("row " + std::to_string(row) + ": non-numeric coordinate", row);
      }
      p[static_cast<Eigen::Index>(k)] = item[k].get<double>();
    }
    points.push_back(std::move(p));
  }
  reject_duplicates(points);
  return points;
}

std::vector<Point> parse_points(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') return parse_points_json(text);
  return parse_points_csv(text);
}

std::vector<Point> load_points(const std::string& path, std::size_t max_points) {
  std::vector<Point> points = parse_points(read_file(path));
  if (points.size() > max_points) {
    throw ResourceError("input has " + std::to_string(points.size()) + " points, cap is " +
                        std::to_string(max_points));
  }
  return points;
}

void reject_duplicates(const std::vector<Point>& points, const std::vector<std::size_t>& rows) {
  if (points.size() < 2) return;
  auto row_of = [&](std::size_t i) { return rows.empty() ? i + 1 : rows[i]; };
  const double tol = 1e-12 * diameter_estimate(points) / 2.0;
  // Sweep along the first coordinate; only pairs within tol there can clash.
  std::vector<std::size_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return points[a][0] < points[b][0] || (points[a][0] == points[b][0] && a < b);
  });
  std::size_t clash_row = 0;
  std::string what;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      const Point& a = points[idx[i]];
      const Point& b = points[idx[j]];
      if (b[0] - a[0] > tol) break;
      const bool exact = a == b;
      if (exact || distance(a, b) < tol) {
        const std::size_t later = std::max(idx[i], idx[j]);
        const std::size_t earlier = std::min(idx[i], idx[j]);
        if (clash_row == 0 || row_of(later) < clash_row) {
          clash_row = row_of(later);
          what = std::string(exact ? "duplicate" : "near-duplicate") + " of row " +
                 std::to_string(row_of(earlier));
        }
      }
    }
  }
  if (clash_row != 0) {
    throw IngestionError("row " + std::to_string(clash_row) + ": " + what, clash_row);
  }
}

std::string graph_to_json(const GraphDump& graph) {
  json j;
  j["dimension"] = graph.dimension;
  json vertices = json::array();
  for (const auto& v : graph.vertices) {
    vertices.push_back({{"id", v.id},
                        {"coords", std::vector<double>(v.coords.data(), v.coords.data() + v.coords.size())},
                        {"kind", to_string(v.kind)},
                        {"layer", v.layer}});
  }
  j["vertices"] = std::move(vertices);
  json edges = json::array();
  for (const auto& [a, b] : graph.edges) edges.push_back({a, b});
  j["edges"] = std::move(edges);
  json tree = json::array();
  for (const auto& node : graph.layer_tree) {
    tree.push_back({{"id", node.id},
                    {"parent", index_or_null(node.parent)},
                    {"shared_vertex", index_or_null(node.shared_vertex)}});
  }
  j["layer_tree"] = std::move(tree);
  return j.dump();
}

GraphDump graph_from_json(const std::string& text) {
  GraphDump g;
  try {
    const json j = json::parse(text);
    g.dimension = j.at("dimension").get<int>();
    for (const auto& v : j.at("vertices")) {
      const auto coords = v.at("coords").get<std::vector<double>>();
      g.vertices.push_back({v.at("id").get<std::size_t>(),
                            Eigen::Map<const Point>(coords.data(), static_cast<Eigen::Index>(coords.size())),
                            vertex_kind_from_string(v.at("kind").get<std::string>()),
                            v.at("layer").get<std::size_t>()});
    }
    for (const auto& e : j.at("edges")) {
      g.edges.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
    }
    for (const auto& node : j.at("layer_tree")) {
      g.layer_tree.push_back({node.at("id").get<std::size_t>(), index_from(node.at("parent")),
                              index_from(node.at("shared_vertex"))});
    }
  } catch (const json::exception& e) {
    throw IngestionError(std::string("malformed graph dump: ") + e.what(), 0);
  }
  return g;
}

std::string stats_to_json(const RunStats& stats) {
  json j;
  j["n"] = stats.n_input;
  j["m"] = stats.m_output;
  j["steiner_count"] = stats.steiner_count;
  j["snap_count"] = stats.snap_count;
  j["layer_count"] = stats.layer_count;
  j["max_degree"] = stats.max_degree;
  j["max_walk_steps"] = stats.max_walk_steps;
  j["insertions"] = stats.insertions;
  j["layer_fallbacks"] = stats.layer_fallbacks;
  json bins = json::array();
  for (const auto& bin : stats.aspect_histogram) {
    bins.push_back({{"lo", bin.lo},
                    {"hi", std::isfinite(bin.hi) ? json(bin.hi) : json(nullptr)},
                    {"count", bin.count}});
  }
  j["aspect_histogram"] = std::move(bins);
  j["wall_time_ms"] = stats.wall_time_ms;
  return j.dump(2);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError("cannot open '" + path + "'", 0);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw UsageError("write to '" + path + "' failed");
}

}  // namespace wsp
