#include "wsp/wsp.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "wsp/config.hpp"
#include "wsp/error.hpp"
#include "wsp/greedy.hpp"
#include "wsp/io.hpp"
#include "wsp/refine.hpp"
#include "wsp/verify.hpp"

struct wsp_points {
  std::vector<wsp::Point> points;
};

struct wsp_config {
  wsp::Config config;
};

struct wsp_result {
  wsp::RunResult run;
};

namespace {

thread_local std::string last_error;

wsp_status status_of(wsp::ErrorKind kind) {
  switch (kind) {
    case wsp::ErrorKind::usage: return WSP_ERR_USAGE;
    case wsp::ErrorKind::ingestion: return WSP_ERR_INGEST;
    case wsp::ErrorKind::config: return WSP_ERR_CONFIG;
    case wsp::ErrorKind::resource: return WSP_ERR_RESOURCE;
    case wsp::ErrorKind::internal: return WSP_ERR_INTERNAL;
  }
  return WSP_ERR_INTERNAL;
}

template <typename F>
wsp_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return WSP_OK;
  } catch (const wsp::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return WSP_ERR_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return WSP_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw wsp::UsageError(std::string(what) + " must not be null");
}

}  // namespace

extern "C" {

const char* wsp_version(void) { return "0.1.0"; }

const char* wsp_last_error(void) { return last_error.c_str(); }

const char* wsp_status_name(wsp_status status) {
  switch (status) {
    case WSP_OK: return "ok";
    case WSP_ERR_USAGE: return "usage";
    case WSP_ERR_INGEST: return "ingestion";
    case WSP_ERR_CONFIG: return "config";
    case WSP_ERR_RESOURCE: return "resource";
    case WSP_ERR_VERIFY: return "verify";
    case WSP_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void wsp_string_free(char* s) { std::free(s); }

wsp_status wsp_points_from_file(const char* path, size_t max_points, wsp_points** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new wsp_points{wsp::load_points(path, max_points)};
  });
}

wsp_status wsp_points_from_buffer(const char* text, size_t length, wsp_points** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new wsp_points{wsp::parse_points(std::string(text, length))};
  });
}

wsp_status wsp_points_from_array(const double* coords, size_t n, size_t d, wsp_points** out) {
  return guarded([&] {
    require(coords, "coords");
    require(out, "out");
    if (d == 0) throw wsp::UsageError("dimension must be positive");
    auto set = std::make_unique<wsp_points>();
    for (size_t i = 0; i < n; ++i) {
      wsp::Point p(static_cast<Eigen::Index>(d));
      for (size_t k = 0; k < d; ++k) p[static_cast<Eigen::Index>(k)] = coords[i * d + k];
      if (!wsp::all_finite(p)) {
        throw wsp::IngestionError("row " + std::to_string(i + 1) + ": non-finite value", i + 1);
      }
      set->points.push_back(std::move(p));
    }
    wsp::reject_duplicates(set->points);
    *out = set.release();
  });
}

void wsp_points_free(wsp_points* points) { delete points; }

size_t wsp_points_count(const wsp_points* points) { return points ? points->points.size() : 0; }

size_t wsp_points_dimension(const wsp_points* points) {
  return points && !points->points.empty() ? static_cast<size_t>(points->points.front().size()) : 0;
}

wsp_config* wsp_config_new(void) { return new (std::nothrow) wsp_config{}; }
void wsp_config_free(wsp_config* config) { delete config; }
void wsp_config_set_tau(wsp_config* c, double v) { if (c) c->config.tau = v; }
void wsp_config_set_epsilon(wsp_config* c, double v) { if (c) c->config.epsilon = v; }
void wsp_config_set_eta(wsp_config* c, double v) { if (c) c->config.eta = v; }
void wsp_config_set_tau_prune(wsp_config* c, double v) { if (c) c->config.tau_prune = v; }
void wsp_config_set_root_cage_scale(wsp_config* c, double v) { if (c) c->config.root_cage_scale = v; }
void wsp_config_set_seed(wsp_config* c, uint64_t v) { if (c) c->config.seed = v; }
void wsp_config_set_max_insertions(wsp_config* c, size_t v) { if (c) c->config.max_insertions = v; }

wsp_status wsp_config_validate(const wsp_config* config) {
  return guarded([&] {
    require(config, "config");
    config->config.validate();
  });
}

wsp_status wsp_run(const wsp_points* points, const wsp_config* config, int flatten,
                   wsp_result** out) {
  return guarded([&] {
    require(points, "points");
    require(config, "config");
    require(out, "out");
    config->config.validate();
    wsp::RunOptions options;
    options.flatten = flatten != 0;
    *out = new wsp_result{wsp::well_spaced_points(points->points, config->config, options)};
  });
}

void wsp_result_free(wsp_result* result) { delete result; }

wsp_status wsp_result_graph_json(const wsp_result* result, int flattened, char** out) {
  return guarded([&] {
    require(result, "result");
    require(out, "out");
    if (flattened) {
      if (!result->run.flattened) throw wsp::UsageError("run was not asked to flatten");
      *out = copy_string(wsp::graph_to_json(*result->run.flattened));
    } else {
      *out = copy_string(wsp::graph_to_json(result->run.graph));
    }
  });
}

wsp_status wsp_result_stats_json(const wsp_result* result, char** out) {
  return guarded([&] {
    require(result, "result");
    require(out, "out");
    *out = copy_string(wsp::stats_to_json(result->run.stats));
  });
}

wsp_status wsp_result_verify(const wsp_result* result, char** report, int* passed) {
  return guarded([&] {
    require(result, "result");
    require(report, "report");
    require(passed, "passed");
    const wsp::VerifyReport r = wsp::verify(*result->run.store);
    *report = copy_string(wsp::verify_report_to_json(r));
    *passed = r.passed() ? 1 : 0;
  });
}

wsp_status wsp_greedy_order_json(const wsp_points* points, char** out) {
  return guarded([&] {
    require(points, "points");
    require(out, "out");
    *out = copy_string(wsp::greedy_order_to_json(wsp::greedy_permutation(points->points)));
  });
}

}  // extern "C"
