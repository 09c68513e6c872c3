// wsp: build a well-spaced superset of a point set and its approximate
// Delaunay graph.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "wsp/wsp.h"

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string stats;
  std::string dump_order;
  double tau = 8.0;
  double epsilon = 0.1;
  double eta = 0.5;
  double tau_prune = 64.0;
  double root_cage_scale = 3.0;
  std::uint64_t seed = 0;
  std::size_t max_points = 1'000'000;
  bool flatten = false;
  bool verify = false;
};

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out;
}

int fail(wsp_status status) {
  std::cerr << "{\"error\": \"" << wsp_status_name(status) << "\", \"code\": "
            << static_cast<int>(status) << ", \"message\": \"" << json_escape(wsp_last_error())
            << "\"}\n";
  return static_cast<int>(status);
}

bool write_text(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::cout << text << '\n';
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << text << '\n';
  return static_cast<bool>(out);
}

// graph.json -> graph.flat.json
std::string flat_path(const std::string& output) {
  if (output.empty() || output == "-") return "";
  const auto slash = output.find_last_of('/');
  const auto dot = output.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return output + ".flat";
  }
  return output.substr(0, dot) + ".flat" + output.substr(dot);
}

// Owns a string returned by the library.
struct Text {
  char* p = nullptr;
  ~Text() { wsp_string_free(p); }
};

int run(const Options& o) {
  wsp_config* config = wsp_config_new();
  wsp_config_set_tau(config, o.tau);
  wsp_config_set_epsilon(config, o.epsilon);
  wsp_config_set_eta(config, o.eta);
  wsp_config_set_tau_prune(config, o.tau_prune);
  wsp_config_set_root_cage_scale(config, o.root_cage_scale);
  wsp_config_set_seed(config, o.seed);
  struct ConfigGuard {
    wsp_config* c;
    ~ConfigGuard() { wsp_config_free(c); }
  } config_guard{config};
  if (wsp_status s = wsp_config_validate(config); s != WSP_OK) return fail(s);

  wsp_points* points = nullptr;
  if (wsp_status s = wsp_points_from_file(o.input.c_str(), o.max_points, &points); s != WSP_OK) {
    return fail(s);
  }
  struct PointsGuard {
    wsp_points* p;
    ~PointsGuard() { wsp_points_free(p); }
  } points_guard{points};

  if (!o.dump_order.empty()) {
    Text order;
    if (wsp_status s = wsp_greedy_order_json(points, &order.p); s != WSP_OK) return fail(s);
    if (!write_text(o.dump_order, order.p)) {
      std::cerr << "cannot write " << o.dump_order << '\n';
      return WSP_ERR_USAGE;
    }
  }

  wsp_result* result = nullptr;
  if (wsp_status s = wsp_run(points, config, o.flatten ? 1 : 0, &result); s != WSP_OK) {
    return fail(s);
  }
  struct ResultGuard {
    wsp_result* r;
    ~ResultGuard() { wsp_result_free(r); }
  } result_guard{result};

  Text graph;
  if (wsp_status s = wsp_result_graph_json(result, 0, &graph.p); s != WSP_OK) return fail(s);
  if (!write_text(o.output, graph.p)) {
    std::cerr << "cannot write " << o.output << '\n';
    return WSP_ERR_USAGE;
  }
  if (o.flatten) {
    Text flat;
    if (wsp_status s = wsp_result_graph_json(result, 1, &flat.p); s != WSP_OK) return fail(s);
    if (!write_text(flat_path(o.output), flat.p)) {
      std::cerr << "cannot write " << flat_path(o.output) << '\n';
      return WSP_ERR_USAGE;
    }
  }
  if (!o.stats.empty()) {
    Text stats;
    if (wsp_status s = wsp_result_stats_json(result, &stats.p); s != WSP_OK) return fail(s);
    if (!write_text(o.stats, stats.p)) {
      std::cerr << "cannot write " << o.stats << '\n';
      return WSP_ERR_USAGE;
    }
  }

  if (o.verify) {
    const std::size_t n = wsp_points_count(points);
    const std::size_t d = wsp_points_dimension(points);
    if (n > 60 || d > 3) {
      std::cerr << "verify skipped: oracle checks need n <= 60 and d <= 3 (got n=" << n
                << ", d=" << d << ")\n";
      return 0;
    }
    Text report;
    int passed = 0;
    if (wsp_status s = wsp_result_verify(result, &report.p, &passed); s != WSP_OK) return fail(s);
    std::cerr << report.p << '\n';
    if (!passed) return WSP_ERR_VERIFY;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build a well-spaced superset of a point set and its approximate Delaunay graph."};
  Options o;
  app.add_option("--input", o.input, "CSV (one point per line) or JSON array of points")
      ->required();
  app.add_option("--output", o.output, "graph dump JSON (stdout when omitted)");
  app.add_option("--tau", o.tau, "quality threshold, > 4")->capture_default_str();
  app.add_option("--epsilon", o.epsilon, "LP tolerance in (0, 1)")->capture_default_str();
  app.add_option("--eta", o.eta, "cage covering radius in (0, 1]")->capture_default_str();
  app.add_option("--tau-prune", o.tau_prune, "aspect cap for search, pruning and LP range")
      ->capture_default_str();
  app.add_option("--root-cage-scale", o.root_cage_scale, "root cage radius over d(p1, p2), >= 2")
      ->capture_default_str();
  app.add_option("--seed", o.seed, "cage sampling seed")->capture_default_str();
  app.add_option("--max-points", o.max_points, "refuse larger inputs")->capture_default_str();
  app.add_flag("--flatten", o.flatten, "also write the flattened graph to <output>.flat.json");
  app.add_option("--stats", o.stats, "write run statistics JSON here");
  app.add_option("--dump-order", o.dump_order, "write the greedy permutation JSON here");
  app.add_flag("--verify", o.verify, "run oracle checks (n <= 60, d <= 3); exit 5 on failure");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(WSP_ERR_USAGE);
  }
  return run(o);
}
