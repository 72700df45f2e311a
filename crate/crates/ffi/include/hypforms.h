#ifndef HYPFORMS_H
#define HYPFORMS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call. `Ok` is zero.
 */
typedef enum {
  HYP_STATUS_OK = 0,
  HYP_STATUS_NULL_POINTER = 1,
  HYP_STATUS_INVALID_UTF8 = 2,
  HYP_STATUS_PARSE_ERROR = 3,
  HYP_STATUS_INVALID_ARGUMENT = 4,
  HYP_STATUS_NOT_HYPERBOLIC = 5,
  HYP_STATUS_INTERNAL = 6,
  HYP_STATUS_PANIC = 7,
} HypStatus;

/**
 * Opaque handle to an exact binary form.
 */
typedef struct HypForm HypForm;

/**
 * Component of a hyperbolic form.
 */
typedef struct {
  size_t degree;
  /**
   * `2 - factor_count`.
   */
  int64_t index;
  /**
   * Position of `index` in the admissible list, highest index first.
   */
  size_t component_rank;
  /**
   * Distinct real lines through the origin.
   */
  size_t factor_count;
} HypComponent;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL after a success.
 * Valid until the next `hyp_*` call on the same thread.
 */
const char *hyp_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` is NULL or came from this library and was not freed before.
 */
void hyp_string_free(char *s);

/**
 * Parses text such as `x^3 - x*y^2` or `(x^2-y^2)*(x^4+y^4)`.
 *
 * # Safety
 * `text` is NULL or a NUL-terminated string; `out` is NULL or writable.
 */
HypStatus hyp_form_parse(const char *text, HypForm **out);

/**
 * Releases a form. NULL is ignored.
 *
 * # Safety
 * `form` is NULL or a live handle from this library.
 */
void hyp_form_free(HypForm *form);

/**
 * Total degree of `form`.
 *
 * # Safety
 * `form` is NULL or a live handle; `out` is NULL or writable.
 */
HypStatus hyp_form_degree(const HypForm *form, size_t *out);

/**
 * Canonical text of `form`; free with `hyp_string_free`.
 *
 * # Safety
 * `form` is NULL or a live handle; `out` is NULL or writable.
 */
HypStatus hyp_form_to_string(const HypForm *form, char **out);

/**
 * Exact Hessian certificate: `*out` is true iff the Hessian is negative
 * away from the origin.
 *
 * # Safety
 * `form` is NULL or a live handle; `out` is NULL or writable.
 */
HypStatus hyp_is_hyperbolic(const HypForm *form, bool *out);

/**
 * Exact polar-form certificate; agrees with `hyp_is_hyperbolic`.
 *
 * # Safety
 * `form` is NULL or a live handle; `out` is NULL or writable.
 */
HypStatus hyp_is_hyperbolic_polar(const HypForm *form, bool *out);

/**
 * Component of a hyperbolic form; `HYP_STATUS_NOT_HYPERBOLIC` otherwise.
 *
 * # Safety
 * `form` is NULL or a live handle; `out` is NULL or writable.
 */
HypStatus hyp_classify(const HypForm *form, HypComponent *out);

/**
 * `Re (x + iy)^m (x^2 + y^2)^((degree - m) / 2)`, hyperbolic for
 * `m <= degree < m^2` with `degree - m` even.
 *
 * # Safety
 * `out` is NULL or writable.
 */
HypStatus hyp_arnold(size_t degree, size_t m, HypForm **out);

/**
 * Number of components in degree `degree` (one representative each).
 *
 * # Safety
 * `out` is NULL or writable.
 */
HypStatus hyp_representative_count(size_t degree, size_t *out);

/**
 * Representative of the component with rank `rank` in degree `degree`.
 *
 * # Safety
 * `out` is NULL or writable.
 */
HypStatus hyp_representative(size_t degree, size_t rank, HypForm **out);

/**
 * SVG of the asymptotic curves of a hyperbolic form with default render
 * options; free with `hyp_string_free`.
 *
 * # Safety
 * `form` is NULL or a live handle; `out` is NULL or writable.
 */
HypStatus hyp_render_svg(const HypForm *form, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPFORMS_H */
