#ifndef HALLSOD_H
#define HALLSOD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Which kernel the shuffle product uses.
typedef enum HallsodKernel {
  HALLSOD_KERNEL_FORMAL = 0,
  HALLSOD_KERNEL_A2 = 1,
  HALLSOD_KERNEL_DEGENERATE = 2,
} HallsodKernel;

// Result codes.
typedef enum HallsodStatus {
  HALLSOD_STATUS_OK = 0,
  HALLSOD_STATUS_NULL_POINTER = 1,
  HALLSOD_STATUS_INVALID_UTF8 = 2,
  HALLSOD_STATUS_PARSE = 3,
  HALLSOD_STATUS_UNKNOWN_QUIVER = 4,
  HALLSOD_STATUS_INVALID_INPUT = 5,
  HALLSOD_STATUS_POLE = 6,
  HALLSOD_STATUS_IO = 7,
  HALLSOD_STATUS_PANIC = 8,
} HallsodStatus;

// A symmetric rational function in the shuffle algebra. Opaque.
typedef struct HallsodElement HallsodElement;

// A quiver. Opaque.
typedef struct HallsodQuiver HallsodQuiver;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty after a success.
// Valid until the next call on the same thread.
const char *hallsod_last_error(void);

// Library version, a static string.
const char *hallsod_version(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void hallsod_string_free(char *s);

// Loads a quiver by built-in name (`jordan`, `doubled-jordan`,
// `tripled-jordan`) or JSON file path.
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be writable.
enum HallsodStatus hallsod_quiver_load(const char *name, struct HallsodQuiver **out);

// Parses a quiver from its JSON description.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum HallsodStatus hallsod_quiver_from_json(const char *json, struct HallsodQuiver **out);

// # Safety
// `q` must come from this library and not have been freed. Null is ignored.
void hallsod_quiver_free(struct HallsodQuiver *q);

// Number of vertices of `q`.
//
// # Safety
// `q` must be a live handle.
enum HallsodStatus hallsod_quiver_vertex_count(const struct HallsodQuiver *q, size_t *out);

// r-invariant of `weight` (comma separated, `;` between vertex blocks) as
// JSON `{"r": "p/q", "lambda": [...] | null}`.
//
// # Safety
// Strings must be NUL-terminated; `q` must be a live handle.
enum HallsodStatus hallsod_r_invariant(const struct HallsodQuiver *q,
                                       const char *dims,
                                       const char *weight,
                                       char **out_json);

// Standard form of `chi + rho + delta * tau_d` as JSON.
//
// # Safety
// Strings must be NUL-terminated; `q` must be a live handle.
enum HallsodStatus hallsod_decompose(const struct HallsodQuiver *q,
                                     const char *dims,
                                     const char *weight,
                                     const char *delta,
                                     char **out_json);

// Number of dominant weights of total `w` in the window of the tripled
// Jordan quiver at dimension `d`.
//
// # Safety
// `out` must be writable.
enum HallsodStatus hallsod_window_count(uint32_t d, int64_t w, size_t *out);

// Parses a shuffle element such as `"[2] z1 + z2"`.
//
// # Safety
// `s` must be NUL-terminated; `out` must be writable.
enum HallsodStatus hallsod_element_parse(const char *s, struct HallsodElement **out);

// # Safety
// `e` must come from this library and not have been freed. Null is ignored.
void hallsod_element_free(struct HallsodElement *e);

// # Safety
// `e` must be a live handle.
enum HallsodStatus hallsod_element_degree(const struct HallsodElement *e, size_t *out);

// Shuffle product `a * b`.
//
// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum HallsodStatus hallsod_element_mul(const struct HallsodElement *a,
                                       const struct HallsodElement *b,
                                       enum HallsodKernel kernel,
                                       struct HallsodElement **out);

// Canonical text form, parseable by [`hallsod_element_parse`].
//
// # Safety
// `e` must be a live handle; `out` must be writable.
enum HallsodStatus hallsod_element_to_string(const struct HallsodElement *e, char **out);

// Exact value at `q1`, `q2` and comma-separated `z`, written as `"p/q"`.
//
// # Safety
// Strings must be NUL-terminated; `e` must be a live handle.
enum HallsodStatus hallsod_element_eval(const struct HallsodElement *e,
                                        const char *q1,
                                        const char *q2,
                                        const char *z,
                                        char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HALLSOD_H */
