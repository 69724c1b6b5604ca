#ifndef HOMLAB_H
#define HOMLAB_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum HlField {
  HL_FIELD_Z = 0,
  HL_FIELD_GF2 = 1,
} HlField;

typedef enum HlStatus {
  HL_STATUS_OK = 0,
  HL_STATUS_NULL_POINTER = 1,
  HL_STATUS_INVALID_INPUT = 2,
  HL_STATUS_GUARD_EXCEEDED = 3,
  HL_STATUS_OVERFLOW = 4,
  HL_STATUS_PANIC = 5,
} HlStatus;

typedef struct HlGraph HlGraph;

typedef struct HlHomPoset HlHomPoset;

typedef struct HlHomology HlHomology;

/**
 * Message for the last failed call on this thread. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *hl_last_error_message(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void hl_string_free(char *s);

/**
 * Parses `{"n": .., "edges": [[u, v], ..]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum HlStatus hl_graph_from_json(const char *json, struct HlGraph **out);

/**
 * Builds a named family such as `T(1,3)`, `S(1,1)`, `K(4)` or `C1(6)`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` writable.
 */
enum HlStatus hl_graph_family(const char *spec, struct HlGraph **out);

/**
 * # Safety
 * `g` must come from this library and not have been freed.
 */
void hl_graph_free(struct HlGraph *g);

/**
 * Number of vertices; 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
uintptr_t hl_graph_vertex_count(const struct HlGraph *g);

/**
 * Writes a newly allocated JSON string to `out`; free it with
 * `hl_string_free`.
 *
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
enum HlStatus hl_graph_to_json(const struct HlGraph *g, char **out);

/**
 * Exact chromatic number; -1 when a loop makes it infinite.
 *
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
enum HlStatus hl_chromatic_number(const struct HlGraph *g, int64_t *out);

/**
 * Enumerates `Hom(source, target)`. `max_elements` of 0 keeps the
 * default guard.
 *
 * # Safety
 * Both graphs must be live handles and `out` writable.
 */
enum HlStatus hl_hom_poset(const struct HlGraph *source,
                           const struct HlGraph *target,
                           uintptr_t max_elements,
                           struct HlHomPoset **out);

/**
 * Number of elements; 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
uintptr_t hl_hom_poset_len(const struct HlHomPoset *p);

/**
 * # Safety
 * `p` must come from this library and not have been freed.
 */
void hl_hom_poset_free(struct HlHomPoset *p);

/**
 * Reduced homology of the order complex of a Hom poset.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum HlStatus hl_hom_homology(const struct HlHomPoset *p,
                              enum HlField field,
                              struct HlHomology **out);

/**
 * Top degree of the complex; -1 when it is empty.
 *
 * # Safety
 * `h` must be a live handle.
 */
int64_t hl_homology_dim(const struct HlHomology *h);

/**
 * Reduced Betti number in `degree` (which may be -1).
 *
 * # Safety
 * `h` must be null or a live handle.
 */
uintptr_t hl_homology_betti(const struct HlHomology *h, int64_t degree);

/**
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum HlStatus hl_homology_to_json(const struct HlHomology *h, char **out);

/**
 * # Safety
 * `h` must come from this library and not have been freed.
 */
void hl_homology_free(struct HlHomology *h);

#endif  /* HOMLAB_H */
