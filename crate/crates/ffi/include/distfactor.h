#ifndef DISTFACTOR_H
#define DISTFACTOR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DfStatus {
  DF_STATUS_OK = 0,
  DF_STATUS_NULL_POINTER = 1,
  DF_STATUS_INVALID_ARGUMENT = 2,
  DF_STATUS_DISCONNECTED = 3,
  DF_STATUS_TOO_LARGE = 4,
  DF_STATUS_PARSE = 5,
  DF_STATUS_NON_CONVERGENCE = 6,
  DF_STATUS_ORACLE_DISAGREEMENT = 7,
  DF_STATUS_PANIC = 8,
  DF_STATUS_INTERNAL = 9,
} DfStatus;

typedef enum DfTheorem {
  /**
   * Parameter `p1 = r`.
   */
  DF_THEOREM_ID_FACTOR_CRITICAL = 0,
  /**
   * Parameters `p1 = a`, `p2 = b`.
   */
  DF_THEOREM_FRACTIONAL_AB = 1,
  /**
   * Parameters `p1 = a`, `p2 = b`.
   */
  DF_THEOREM_AB_DELETED = 2,
  /**
   * Parameter `p1 = k`.
   */
  DF_THEOREM_K_FACTOR = 3,
} DfTheorem;

typedef enum DfVerdict {
  DF_VERDICT_CONSISTENT = 0,
  DF_VERDICT_VACUOUS = 1,
  DF_VERDICT_EXTREMAL_EXCEPTION = 2,
  DF_VERDICT_COUNTEREXAMPLE = 3,
  DF_VERDICT_BOUNDARY = 4,
  DF_VERDICT_INAPPLICABLE = 5,
} DfVerdict;

/**
 * Opaque graph handle.
 */
typedef struct DfGraph DfGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next `df_` call on the same thread.
 */
const char *df_last_error_message(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void df_string_free(char *s);

/**
 * Edgeless graph on `n` vertices.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DfStatus df_graph_new(size_t n, struct DfGraph **out);

/**
 * # Safety
 * `g` must be null or a live handle from this library.
 */
void df_graph_free(struct DfGraph *g);

/**
 * Adds edge `uv`; repeated edges are ignored.
 *
 * # Safety
 * `g` must be a live handle.
 */
enum DfStatus df_graph_add_edge(struct DfGraph *g, size_t u, size_t v);

/**
 * # Safety
 * `g` must be a live handle; `out` valid for writes.
 */
enum DfStatus df_graph_order(const struct DfGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle; `out` valid for writes.
 */
enum DfStatus df_graph_edge_count(const struct DfGraph *g, size_t *out);

/**
 * # Safety
 * `text` must be a nul-terminated string; `out` valid for writes.
 */
enum DfStatus df_graph_from_graph6(const char *text, struct DfGraph **out);

/**
 * graph6 encoding; free the result with [`df_string_free`].
 *
 * # Safety
 * `g` must be a live handle; `out` valid for writes.
 */
enum DfStatus df_graph_to_graph6(const struct DfGraph *g, char **out);

/**
 * The extremal graph `G^(r)` on `n` vertices.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DfStatus df_extremal_gr(size_t n, size_t r, struct DfGraph **out);

/**
 * `λ₁(D(G))`; the graph must be connected.
 *
 * # Safety
 * `g` must be a live handle; `out` valid for writes.
 */
enum DfStatus df_distance_spectral_radius(const struct DfGraph *g, double *out);

/**
 * `μ₁(D^Q(G))`; the graph must be connected.
 *
 * # Safety
 * `g` must be a live handle; `out` valid for writes.
 */
enum DfStatus df_dq_spectral_radius(const struct DfGraph *g, double *out);

/**
 * # Safety
 * `g` must be a live handle; `out` valid for writes.
 */
enum DfStatus df_has_perfect_matching(const struct DfGraph *g, bool *out);

/**
 * # Safety
 * `g` must be a live handle; `out` valid for writes.
 */
enum DfStatus df_has_k_factor(const struct DfGraph *g, size_t k, bool *out);

/**
 * # Safety
 * `g` must be a live handle; `out` valid for writes.
 */
enum DfStatus df_has_fractional_ab_factor(const struct DfGraph *g, size_t a, size_t b, bool *out);

/**
 * # Safety
 * `g` must be a live handle; `out` valid for writes.
 */
enum DfStatus df_is_fractional_ab_deleted(const struct DfGraph *g, size_t a, size_t b, bool *out);

/**
 * # Safety
 * `g` must be a live handle; `out` valid for writes.
 */
enum DfStatus df_is_id_factor_critical(const struct DfGraph *g, bool *out);

/**
 * Certifies one theorem on `g`. Writes the verdict to `verdict` and, when
 * `report_json` is non-null, the full report as JSON (free it with
 * [`df_string_free`]). Unused parameters are ignored.
 *
 * # Safety
 * `g` must be a live handle; `verdict` valid for writes; `report_json`
 * null or valid for writes.
 */
enum DfStatus df_certify(const struct DfGraph *g,
                         enum DfTheorem theorem,
                         size_t p1,
                         size_t p2,
                         enum DfVerdict *verdict,
                         char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DISTFACTOR_H */
