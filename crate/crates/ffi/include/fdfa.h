#ifndef FDFA_H
#define FDFA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum FdfaStatus {
  // Success, or the checked property holds.
  FDFA_STATUS_OK = 0,
  // The checked property is refuted; a witness was written if requested.
  FDFA_STATUS_REFUTED = 1,
  FDFA_STATUS_NULL_ARGUMENT = 2,
  FDFA_STATUS_INVALID_UTF8 = 3,
  FDFA_STATUS_PARSE_ERROR = 4,
  FDFA_STATUS_INVALID_INPUT = 5,
  FDFA_STATUS_PRECONDITION = 6,
  FDFA_STATUS_CAP_EXCEEDED = 7,
  FDFA_STATUS_PANIC = 8,
} FdfaStatus;

// Opaque family handle.
typedef struct FdfaFamily FdfaFamily;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the next call.
const char *fdfa_last_error(void);

// Release a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void fdfa_string_free(char *s);

// Parse FAF text into a new family handle.
//
// # Safety
// `text` must be a nul-terminated string and `out` a valid pointer.
enum FdfaStatus fdfa_family_parse(const char *text, struct FdfaFamily **out);

// Build one of the named generator families.
//
// # Safety
// `name` must be a nul-terminated string and `out` a valid pointer.
enum FdfaStatus fdfa_family_generate(const char *name, size_t n, struct FdfaFamily **out);

// # Safety
// `f` must be null or a handle from this library that has not been freed.
void fdfa_family_free(struct FdfaFamily *f);

// Serialize to FAF text; free the result with `fdfa_string_free`.
//
// # Safety
// `f` must be a live handle and `out` a valid pointer.
enum FdfaStatus fdfa_family_serialize(const struct FdfaFamily *f, char **out);

// Number of leading states and the largest progress automaton.
//
// # Safety
// `f` must be a live handle; the out pointers must be valid.
enum FdfaStatus fdfa_family_size(const struct FdfaFamily *f, size_t *leading, size_t *progress);

// Whether the family accepts the lasso `(u, x)` under its own semantics
// (normalized, or duo-normalized for duo families). Words use the family's
// word syntax; the empty string is ε.
//
// # Safety
// `f` must be a live handle, `u` and `x` nul-terminated strings, `out` valid.
enum FdfaStatus fdfa_family_accepts(const struct FdfaFamily *f,
                                    const char *u,
                                    const char *x,
                                    bool *out);

// Saturation (`full` false) or full saturation (`full` true).
// Returns `Ok` or `Refuted`; on refutation `*witness_json` (if non-null) receives
// the counterexample as JSON.
//
// # Safety
// `f` must be a live handle; `witness_json` may be null.
enum FdfaStatus fdfa_check_saturated(const struct FdfaFamily *f, bool full, char **witness_json);

// Saturation of an FDWA family.
//
// # Safety
// As for `fdfa_check_saturated`.
enum FdfaStatus fdfa_check_fdwa_saturated(const struct FdfaFamily *f, char **witness_json);

// Almost saturation, exploring at most `cap` transformations.
//
// # Safety
// As for `fdfa_check_saturated`.
enum FdfaStatus fdfa_check_almost_saturated(const struct FdfaFamily *f,
                                            size_t cap,
                                            char **witness_json);

// UP-regularity of the normalized language; `Ok` means regular.
//
// # Safety
// `f` must be a live handle.
enum FdfaStatus fdfa_check_regular(const struct FdfaFamily *f, size_t cap);

// Translate an FDWA family to an NBA, written as FAF text of kind `nba`.
//
// # Safety
// `f` must be a live handle and `out` a valid pointer.
enum FdfaStatus fdfa_fdwa_to_nba(const struct FdfaFamily *f, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FDFA_H */
