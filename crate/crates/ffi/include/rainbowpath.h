#ifndef RAINBOWPATH_H
#define RAINBOWPATH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum RpStatus {
  RP_STATUS_OK = 0,
  RP_STATUS_NULL_POINTER = 1,
  RP_STATUS_INVALID_UTF8 = 2,
  RP_STATUS_INVALID_ARGUMENT = 3,
  RP_STATUS_PARSE = 4,
  RP_STATUS_IMPROPER_COLORING = 5,
  RP_STATUS_NOT_TRIANGLE_FREE = 6,
  RP_STATUS_DISCONNECTED = 7,
  RP_STATUS_TOO_LARGE = 8,
  RP_STATUS_BUDGET_EXCEEDED = 9,
  RP_STATUS_IO = 10,
  RP_STATUS_PANIC = 11,
} RpStatus;

// Opaque graph handle.
typedef struct RpGraph RpGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Valid until the next call.
const char *rp_last_error_message(void);

// # Safety
// `s` must be NULL or a string returned by this library.
void rp_string_free(char *s);

// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum RpStatus rp_graph_from_graph6(const char *text, struct RpGraph **out);

// Builds a graph from `edge_count` pairs stored flat in `edges` (`2 * edge_count` entries).
//
// # Safety
// `edges` must point to `2 * edge_count` readable entries (may be NULL when zero).
enum RpStatus rp_graph_from_edges(size_t vertex_count,
                                  const size_t *edges,
                                  size_t edge_count,
                                  struct RpGraph **out);

// # Safety
// `out` must be writable.
enum RpStatus rp_generate_cycle(size_t n, struct RpGraph **out);

// Mycielski graph with chromatic number `chi` (at least 2).
//
// # Safety
// `out` must be writable.
enum RpStatus rp_generate_mycielski(size_t chi, struct RpGraph **out);

// # Safety
// `out` must be writable.
enum RpStatus rp_generate_kneser(size_t n, size_t k, struct RpGraph **out);

// # Safety
// `out` must be writable.
enum RpStatus rp_generate_random_triangle_free(size_t n,
                                               double p,
                                               uint64_t seed,
                                               struct RpGraph **out);

// # Safety
// `g` must be NULL or a handle from this library, not yet freed.
void rp_graph_free(struct RpGraph *g);

// Returns 0 for a NULL handle.
//
// # Safety
// `g` must be NULL or a live handle.
size_t rp_graph_vertex_count(const struct RpGraph *g);

// Returns 0 for a NULL handle.
//
// # Safety
// `g` must be NULL or a live handle.
size_t rp_graph_edge_count(const struct RpGraph *g);

// # Safety
// `g` must be a live handle; `out` must be writable.
enum RpStatus rp_graph_to_graph6(const struct RpGraph *g, char **out);

// Exact chromatic number. If `out_coloring` is non-NULL it receives an
// optimal coloring (`vertex_count` entries, colors from 1).
//
// # Safety
// `g` must be a live handle; `out_coloring` must be NULL or hold `vertex_count` entries.
enum RpStatus rp_chromatic_number(const struct RpGraph *g,
                                  uint32_t *out_chi,
                                  uint32_t *out_coloring);

// Longest induced path. `out_vertices` must hold `vertex_count` entries.
//
// # Safety
// `g` must be a live handle; output pointers must be writable.
enum RpStatus rp_longest_induced_path(const struct RpGraph *g,
                                      uint64_t max_nodes,
                                      size_t *out_vertices,
                                      size_t *out_len);

// Longest induced path whose vertices all have distinct colors.
//
// # Safety
// `colors` must hold `vertex_count` entries; `out_vertices` must hold `vertex_count` entries.
enum RpStatus rp_longest_induced_rainbow_path(const struct RpGraph *g,
                                              const uint32_t *colors,
                                              uint64_t max_nodes,
                                              size_t *out_vertices,
                                              size_t *out_len);

// Induced path from `start` built by the color-class recursion, for a
// connected triangle-free graph with chromatic number at least `chi_lb`.
//
// # Safety
// `colors` and `out_vertices` must hold `vertex_count` entries; other outputs must be writable.
enum RpStatus rp_colorful_path(const struct RpGraph *g,
                               const uint32_t *colors,
                               size_t start,
                               size_t chi_lb,
                               size_t *out_vertices,
                               size_t *out_len,
                               size_t *out_color_count);

// Sweeps up to `cap` canonical optimal colorings and writes the JSON report.
//
// # Safety
// `g` must be a live handle; `out_json` must be writable.
enum RpStatus rp_check_graph_json(const struct RpGraph *g,
                                  size_t cap,
                                  uint64_t seed,
                                  bool thorough,
                                  char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RAINBOWPATH_H */
