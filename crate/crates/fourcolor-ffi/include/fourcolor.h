/* C interface of the fourcolor plane-triangulation workbench. */

#ifndef FOURCOLOR_H
#define FOURCOLOR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared by all fallible entry points.
 */
typedef enum FcStatus {
  FC_STATUS_OK = 0,
  FC_STATUS_NULL_POINTER = 1,
  FC_STATUS_INVALID_UTF8 = 2,
  FC_STATUS_PARSE_ERROR = 3,
  FC_STATUS_INVALID_ARGUMENT = 4,
  FC_STATUS_DISCONNECTED = 5,
  FC_STATUS_INTERNAL = 6,
} FcStatus;

/**
 * Opaque coloring handle.
 */
typedef struct FcColoring FcColoring;

/**
 * Opaque plane graph handle.
 */
typedef struct FcGraph FcGraph;

/**
 * Outcome summary of one coloring run.
 */
typedef struct FcColorSummary {
  uint32_t colors_used;
  uint8_t palette_size;
  uint64_t gap_events;
  bool used_kempe_fallback;
} FcColorSummary;

/**
 * Verifier verdict; `violating_u`/`violating_w` are -1 when proper.
 */
typedef struct FcVerifyResult {
  bool proper;
  int64_t violating_u;
  int64_t violating_w;
  uint32_t colors_used;
} FcVerifyResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread. Borrowed;
 * valid until the next failing call on the same thread.
 */
const char *fc_last_error(void);

/**
 * Parses an instance file (rotation-system JSON or `p/e` edge list).
 * The instance must be connected.
 *
 * # Safety
 * `text` must point to a NUL-terminated string.
 */
struct FcGraph *fc_graph_parse(const char *text);

/**
 * Random triangulation with `n >= 4` vertices; `flipped != 0` runs the
 * diagonal flip walk after stacking.
 */
struct FcGraph *fc_graph_generate(uint32_t n, uint64_t seed, int32_t flipped);

/**
 * Named fixture: k4, octahedron, icosahedron, errera, glued-k4s, wheel(d),
 * bipyramid(d).
 *
 * # Safety
 * `name` must point to a NUL-terminated string.
 */
struct FcGraph *fc_graph_fixture(const char *name);

/**
 * # Safety
 * `g` must be a live handle from this library (or null).
 */
void fc_graph_free(struct FcGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle.
 */
uint32_t fc_graph_vertex_count(const struct FcGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle.
 */
uint32_t fc_graph_edge_count(const struct FcGraph *g);

/**
 * Canonical rotation-system JSON of the graph; free with `fc_string_free`.
 *
 * # Safety
 * `g` must be a live graph handle.
 */
char *fc_graph_to_json(const struct FcGraph *g);

/**
 * Runs the inductive four-coloring. `attempts_per_call` of 0 selects the
 * default budget. The summary is optional.
 *
 * # Safety
 * `g` must be a live graph handle; `summary` may be null.
 */
struct FcColoring *fc_four_color(const struct FcGraph *g,
                                 uint32_t attempts_per_call,
                                 struct FcColorSummary *summary);

/**
 * Heawood's guaranteed five-coloring.
 *
 * # Safety
 * `g` must be a live graph handle.
 */
struct FcColoring *fc_kempe_five_color(const struct FcGraph *g);

/**
 * Color of `vertex` (1..=5), or -1 when the vertex is absent or uncolored.
 *
 * # Safety
 * `c` must be a live coloring handle.
 */
int32_t fc_coloring_get(const struct FcColoring *c, uint32_t vertex);

/**
 * # Safety
 * `c` must be a live handle from this library (or null).
 */
void fc_coloring_free(struct FcColoring *c);

/**
 * Checks a coloring against a graph.
 *
 * # Safety
 * `g` and `c` must be live handles; `out` must be writable.
 */
enum FcStatus fc_verify(const struct FcGraph *g,
                        const struct FcColoring *c,
                        struct FcVerifyResult *out);

/**
 * Structured atlas report for rings of length 4 or 5 as a JSON document;
 * free with `fc_string_free`.
 */
char *fc_atlas_report_json(uint32_t d);

/**
 * # Safety
 * `s` must be a string returned by this library (or null).
 */
void fc_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* FOURCOLOR_H */
