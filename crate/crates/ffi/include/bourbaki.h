#ifndef BOURBAKI_H
#define BOURBAKI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BkClassification {
  BK_CLASSIFICATION_TERM = 0,
  BK_CLASSIFICATION_RELATION = 1,
  BK_CLASSIFICATION_NEITHER = 2,
} BkClassification;

typedef enum BkStatus {
  BK_STATUS_OK = 0,
  BK_STATUS_NULL_POINTER = 1,
  BK_STATUS_INVALID_UTF8 = 2,
  BK_STATUS_PARSE = 3,
  BK_STATUS_DOMAIN = 4,
  BK_STATUS_PANIC = 5,
} BkStatus;

/**
 * An expanded assembly.
 */
typedef struct BkAssembly BkAssembly;

/**
 * A hereditarily finite set.
 */
typedef struct BkHfSet BkHfSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *bk_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void bk_string_free(char *s);

/**
 * Parse and expand an expression such as `(subset x y)`.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum BkStatus bk_assembly_expand(const char *text, struct BkAssembly **out);

/**
 * # Safety
 * `a` must be null or a handle from [`bk_assembly_expand`].
 */
void bk_assembly_free(struct BkAssembly *a);

/**
 * The two-line linear form `signs: …` / `links: …`.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum BkStatus bk_assembly_linear(const struct BkAssembly *a, char **out);

/**
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum BkStatus bk_assembly_classify(const struct BkAssembly *a, enum BkClassification *out);

/**
 * Counts of an expression as JSON with decimal-string numbers.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum BkStatus bk_count_expression(const char *text, char **out);

/**
 * Sign and link counts of the numeral `n` as decimal strings.
 *
 * # Safety
 * `signs` and `links` must be valid pointers.
 */
enum BkStatus bk_count_numeral(uint64_t n, char **signs, char **links);

/**
 * Evaluate a set program whose value is a set.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum BkStatus bk_hf_eval(const char *text, struct BkHfSet **out);

/**
 * # Safety
 * `s` must be null or a handle from [`bk_hf_eval`].
 */
void bk_hf_free(struct BkHfSet *s);

/**
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum BkStatus bk_hf_len(const struct BkHfSet *s, size_t *out);

/**
 * Print with numerals in decimal when `compact` is nonzero.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum BkStatus bk_hf_to_string(const struct BkHfSet *s, bool compact, char **out);

/**
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum BkStatus bk_hf_is_ordinal(const struct BkHfSet *s, bool *out);

/**
 * Witness for an injection-pair instance (`E:`, `F:`, `f:`, `g:` lines).
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum BkStatus bk_cantor_bernstein(const char *text, bool as_json, char **out);

/**
 * Extremal fixed points of a monotone map instance.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum BkStatus bk_tarski(const char *text, bool as_json, char **out);

/**
 * Uncovered tuple of a König instance (`B:`, `A:` lines).
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum BkStatus bk_koenig(const char *text, bool as_json, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* BOURBAKI_H */
