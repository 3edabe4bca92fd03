#ifndef RATPOLY_H
#define RATPOLY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RpMethod {
  RP_METHOD_AUTO = 0,
  RP_METHOD_STRIP = 1,
  RP_METHOD_GENERIC = 2,
} RpMethod;

typedef enum RpStatus {
  RP_STATUS_OK = 0,
  RP_STATUS_NULL_POINTER = 1,
  RP_STATUS_INVALID_ARGUMENT = 2,
  RP_STATUS_DEGENERATE = 3,
  RP_STATUS_OVERFLOW = 4,
  RP_STATUS_VERIFICATION = 5,
  RP_STATUS_BUFFER_TOO_SMALL = 6,
  RP_STATUS_INTERNAL = 7,
} RpStatus;

/**
 * A k-rational polygon, stored through the vertices of kP.
 */
typedef struct RpPolygon RpPolygon;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *rp_last_error(void);

/**
 * Builds conv(points / k) from `n` points given as interleaved x, y pairs.
 *
 * # Safety
 * `xy` must point to `2 * n` readable values and `out` must be writable.
 */
enum RpStatus rp_polygon_new(int64_t k, const int64_t *xy, uintptr_t n, struct RpPolygon **out);

/**
 * # Safety
 * `p` must be NULL or a handle from this library that was not freed yet.
 */
void rp_polygon_free(struct RpPolygon *p);

/**
 * # Safety
 * `p` must be a live handle.
 */
int64_t rp_polygon_k(const struct RpPolygon *p);

/**
 * # Safety
 * `p` must be a live handle.
 */
uintptr_t rp_polygon_num_vertices(const struct RpPolygon *p);

/**
 * Copies the counterclockwise vertices of kP as x, y pairs into `xy`,
 * which has room for `cap` values.
 *
 * # Safety
 * `p` must be a live handle and `xy` must point to `cap` writable values.
 */
enum RpStatus rp_polygon_vertices(const struct RpPolygon *p, int64_t *xy, uintptr_t cap);

/**
 * Interior, boundary and total lattice point counts.
 *
 * # Safety
 * `p` must be a live handle and the outputs writable.
 */
enum RpStatus rp_polygon_tally(const struct RpPolygon *p,
                               uint64_t *interior,
                               uint64_t *boundary,
                               uint64_t *total);

/**
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum RpStatus rp_polygon_normalized_volume(const struct RpPolygon *p, int64_t *out);

/**
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum RpStatus rp_polygon_is_maximal(const struct RpPolygon *p, bool *out);

/**
 * Number of lattice points of tP.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum RpStatus rp_polygon_ehrhart(const struct RpPolygon *p, int64_t t, uint64_t *out);

/**
 * The canonical representative under affine unimodular maps with
 * translations in kZ², as a new handle.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum RpStatus rp_polygon_normal_form(const struct RpPolygon *p, struct RpPolygon **out);

/**
 * Dataset line of the polygon's class, `k:x1,y1;...`. Free the string with
 * `rp_string_free`.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum RpStatus rp_polygon_encode(const struct RpPolygon *p, char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void rp_string_free(char *s);

/**
 * Number of k-maximal polygons with i interior lattice points.
 *
 * # Safety
 * `out` must be writable.
 */
enum RpStatus rp_count_maximal(int64_t k, uint64_t i, enum RpMethod method, uintptr_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RATPOLY_H */
