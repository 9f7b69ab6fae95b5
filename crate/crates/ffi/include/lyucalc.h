#ifndef LYUCALC_H
#define LYUCALC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LyuStatus {
  LYU_STATUS_OK = 0,
  LYU_STATUS_NULL = 1,
  LYU_STATUS_PARSE = 2,
  LYU_STATUS_INHOMOGENEOUS = 3,
  LYU_STATUS_INTERNAL = 4,
  LYU_STATUS_RANGE = 5,
  LYU_STATUS_UTF8 = 6,
  LYU_STATUS_INVALID = 7,
} LyuStatus;

// A parsed ideal in a polynomial ring over F_p.
typedef struct LyuIdeal LyuIdeal;

// A computed Lyubeznik table.
typedef struct LyuTable LyuTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failed call on this thread; empty after a success.
// Valid until the next call on this thread.
const char *lyu_last_error(void);

// Parse a problem file (`p=`, `vars=`, `gens=` lines) into `*out`.
//
// # Safety
// `text` is a nul-terminated string; `out` is writable.
enum LyuStatus lyu_ideal_parse(const char *text, struct LyuIdeal **out);

// # Safety
// `ideal` is null or came from this library and is not used afterwards.
void lyu_ideal_free(struct LyuIdeal *ideal);

// dim R/I, the dimension of the cone.
//
// # Safety
// `ideal` is a live handle; `out` is writable.
enum LyuStatus lyu_ideal_krull_dimension(const struct LyuIdeal *ideal, size_t *out);

// The d-uple Veronese re-embedding of the ideal, as a new handle.
//
// # Safety
// `ideal` is a live handle; `out` is writable.
enum LyuStatus lyu_veronese(const struct LyuIdeal *ideal, uint32_t d, struct LyuIdeal **out);

// Compute the full table λ_{i,j}, 0 ≤ i ≤ j ≤ dim A.
//
// # Safety
// `ideal` is a live handle; `out` is writable.
enum LyuStatus lyu_table_compute(const struct LyuIdeal *ideal,
                                 bool minimize,
                                 struct LyuTable **out);

// # Safety
// `table` is null or came from this library and is not used afterwards.
void lyu_table_free(struct LyuTable *table);

// dim A of the table.
//
// # Safety
// `table` is a live handle; `out` is writable.
enum LyuStatus lyu_table_dim(const struct LyuTable *table, size_t *out);

// λ_{i,j}; `LYU_STATUS_RANGE` unless i, j ≤ dim A.
//
// # Safety
// `table` is a live handle; `out` is writable.
enum LyuStatus lyu_table_get(const struct LyuTable *table, size_t i, size_t j, size_t *out);

// The table as the CLI's JSON report; free with `lyu_string_free`.
//
// # Safety
// `table` is a live handle; `out` is writable.
enum LyuStatus lyu_table_to_json(const struct LyuTable *table, char **out);

// # Safety
// `s` is null or a string returned by this library, not used afterwards.
void lyu_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LYUCALC_H */
