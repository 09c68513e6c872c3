/* C interface to the well-spaced point set builder.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Functions report failure through wsp_status;
 * the message for the most recent failure on the calling thread is
 * available from wsp_last_error(). Strings returned through char** are
 * released with wsp_string_free().
 */
#ifndef WSP_WSP_H
#define WSP_WSP_H

#include <stddef.h>
#include <stdint.h>

#if defined(WSP_BUILDING_LIBRARY)
#define WSP_API __attribute__((visibility("default")))
#else
#define WSP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wsp_status {
  WSP_OK = 0,
  WSP_ERR_USAGE = 1,
  WSP_ERR_INGEST = 2,
  WSP_ERR_CONFIG = 3,
  WSP_ERR_RESOURCE = 4,
  WSP_ERR_VERIFY = 5,
  WSP_ERR_INTERNAL = 6
} wsp_status;

typedef struct wsp_points wsp_points;
typedef struct wsp_config wsp_config;
typedef struct wsp_result wsp_result;

WSP_API const char* wsp_version(void);
WSP_API const char* wsp_last_error(void);
WSP_API const char* wsp_status_name(wsp_status status);
WSP_API void wsp_string_free(char* s);

/* Point sets. CSV (one point per line) or a JSON array of arrays. */
WSP_API wsp_status wsp_points_from_file(const char* path, size_t max_points, wsp_points** out);
WSP_API wsp_status wsp_points_from_buffer(const char* text, size_t length, wsp_points** out);
/* Row-major n x d coordinates. */
WSP_API wsp_status wsp_points_from_array(const double* coords, size_t n, size_t d,
                                         wsp_points** out);
WSP_API void wsp_points_free(wsp_points* points);
WSP_API size_t wsp_points_count(const wsp_points* points);
WSP_API size_t wsp_points_dimension(const wsp_points* points);

/* Configuration; starts at the defaults. Setters never fail; the values are
 * checked by wsp_config_validate and wsp_run. */
WSP_API wsp_config* wsp_config_new(void);
WSP_API void wsp_config_free(wsp_config* config);
WSP_API void wsp_config_set_tau(wsp_config* config, double tau);
WSP_API void wsp_config_set_epsilon(wsp_config* config, double epsilon);
WSP_API void wsp_config_set_eta(wsp_config* config, double eta);
WSP_API void wsp_config_set_tau_prune(wsp_config* config, double tau_prune);
WSP_API void wsp_config_set_root_cage_scale(wsp_config* config, double scale);
WSP_API void wsp_config_set_seed(wsp_config* config, uint64_t seed);
WSP_API void wsp_config_set_max_insertions(wsp_config* config, size_t cap);
WSP_API wsp_status wsp_config_validate(const wsp_config* config);

/* Runs the construction. With `flatten` nonzero the single flattened graph
 * is also computed. */
WSP_API wsp_status wsp_run(const wsp_points* points, const wsp_config* config, int flatten,
                           wsp_result** out);
WSP_API void wsp_result_free(wsp_result* result);

/* Graph dump JSON; `flattened` selects the flattened graph, which must have
 * been requested from wsp_run. */
WSP_API wsp_status wsp_result_graph_json(const wsp_result* result, int flattened, char** out);
WSP_API wsp_status wsp_result_stats_json(const wsp_result* result, char** out);
/* Oracle checks of Delaunay containment, cell quality and feature size.
 * Slow; meant for small inputs. Writes a JSON report and sets *passed. */
WSP_API wsp_status wsp_result_verify(const wsp_result* result, char** report, int* passed);

/* Greedy permutation of a point set as JSON {order, predecessor, radii}. */
WSP_API wsp_status wsp_greedy_order_json(const wsp_points* points, char** out);

#ifdef __cplusplus
}
#endif

#endif /* WSP_WSP_H */
