#ifndef UCYCLE_H
#define UCYCLE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Values accepted for the `kind` arguments.
typedef enum UcKind {
  UC_KIND_CYCLE = 0,
  UC_KIND_WORD = 1,
} UcKind;

// Status codes. Values 1 and 3 match the command-line exit codes.
typedef enum UcStatus {
  UC_STATUS_OK = 0,
  // The word set has no u-cycle / u-word of the requested kind.
  UC_STATUS_NOT_UNIVERSAL = 1,
  UC_STATUS_INVALID_ARGUMENT = 2,
  UC_STATUS_CAP_EXCEEDED = 3,
  UC_STATUS_NULL_POINTER = 4,
  // An unexpected internal failure; the library state is unaffected.
  UC_STATUS_INTERNAL = 5,
} UcStatus;

// Opaque result of an exhaustive probability computation.
typedef struct UcExactResult UcExactResult;

// Opaque set of words of one `(n, k)`.
typedef struct UcWordSet UcWordSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failing call on this thread, or null. The pointer
// stays valid until the next failing call on this thread.
const char *uc_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string obtained from this library, freed once.
void uc_string_free(char *s);

// All `k^n` words.
//
// # Safety
// `out` must be valid for writing a pointer.
enum UcStatus uc_wordset_full(uint32_t n, uint32_t k, struct UcWordSet **out);

// Words given by their integer codes (first letter most significant).
//
// # Safety
// `codes` must point to `len` readable values (or be null with `len == 0`);
// `out` must be valid for writing a pointer.
enum UcStatus uc_wordset_from_codes(uint32_t n,
                                    uint32_t k,
                                    const uint64_t *codes,
                                    size_t len,
                                    struct UcWordSet **out);

// Words from text such as `"001,010,100"`. For `k > 10` words are written
// as comma-separated letters and separated from each other by `;`.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be valid for writing.
enum UcStatus uc_wordset_parse(uint32_t n, uint32_t k, const char *text, struct UcWordSet **out);

// The words of `A^n` not in `set`.
//
// # Safety
// `set` must be a live handle; `out` must be valid for writing.
enum UcStatus uc_wordset_complement(const struct UcWordSet *set, struct UcWordSet **out);

// Number of words in `set`; 0 for null.
//
// # Safety
// `set` must be null or a live handle.
size_t uc_wordset_len(const struct UcWordSet *set);

// # Safety
// `set` must be null or a handle from this library, freed once.
void uc_wordset_free(struct UcWordSet *set);

// Whether `set` has a u-cycle (`kind` 0) or u-word (`kind` 1).
//
// # Safety
// `set` must be a live handle; `out` must be valid for writing.
enum UcStatus uc_exists(const struct UcWordSet *set, uint32_t kind, bool *out);

// Builds the canonical u-cycle or u-word. Returns `NotUniversal` with a
// diagnostic in the last error message when none exists.
//
// # Safety
// `set` must be a live handle; `out` must be valid for writing. The string
// written to `out` must be released with [`uc_string_free`].
enum UcStatus uc_construct(const struct UcWordSet *set, uint32_t kind, char **out);

// Exact probability by exhaustive scan. `workers == 0` uses the default
// worker count (the `UCYCLE_WORKERS` variable, else all cores).
//
// # Safety
// `out` must be valid for writing a pointer.
enum UcStatus uc_exact_probability(uint32_t n,
                                   uint32_t k,
                                   uint64_t s,
                                   uint32_t kind,
                                   uint32_t workers,
                                   struct UcExactResult **out);

// Number of favorable removal sets, in decimal.
//
// # Safety
// `result` must be a live handle; `out` must be valid for writing.
enum UcStatus uc_exact_result_favorable(const struct UcExactResult *result, char **out);

// Number of removal sets, in decimal.
//
// # Safety
// `result` must be a live handle; `out` must be valid for writing.
enum UcStatus uc_exact_result_total(const struct UcExactResult *result, char **out);

// The probability as a reduced fraction `"p/q"` (or `"0"`, `"1"`).
//
// # Safety
// `result` must be a live handle; `out` must be valid for writing.
enum UcStatus uc_exact_result_probability(const struct UcExactResult *result, char **out);

// The result as a JSON object, identical to the command-line output.
//
// # Safety
// `result` must be a live handle; `out` must be valid for writing.
enum UcStatus uc_exact_result_json(const struct UcExactResult *result, char **out);

// # Safety
// `result` must be null or a handle from this library, freed once.
void uc_exact_result_free(struct UcExactResult *result);

// Every closed-form bound and exact small-`s` value at `(n, k, s)` as JSON.
//
// # Safety
// `out` must be valid for writing a pointer.
enum UcStatus uc_bounds_json(uint32_t n, uint32_t k, uint64_t s, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UCYCLE_H */
