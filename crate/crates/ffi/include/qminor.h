#ifndef QMINOR_H
#define QMINOR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result codes.
 */
typedef enum QmStatus {
  QM_STATUS_OK = 0,
  QM_STATUS_NULL_POINTER = 1,
  QM_STATUS_INVALID_UTF8 = 2,
  QM_STATUS_PARSE = 3,
  QM_STATUS_INVALID_INPUT = 4,
  QM_STATUS_VERIFICATION_FAILED = 5,
  QM_STATUS_JSON = 6,
  QM_STATUS_IO = 7,
  QM_STATUS_PANIC = 8,
} QmStatus;

/**
 * Opaque handle to a generated or loaded relation.
 */
typedef struct QmRelation QmRelation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version string of the library. Static; do not free.
 */
const char *qm_version(void);

/**
 * Message of the last failure on this thread, or NULL if none. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *qm_last_error_message(void);

/**
 * Generates the relation between the minors `lhs` and `rhs` of the
 * `n x n` matrix, e.g. `"[3 4|1 3]"`, and stores a new handle in `*out`.
 *
 * # Safety
 * `lhs` and `rhs` must be NUL-terminated strings; `out` must be writable.
 */
enum QmStatus qm_commute(uint32_t n, const char *lhs, const char *rhs, struct QmRelation **out);

/**
 * Loads a relation from its JSON form.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum QmStatus qm_relation_from_json(const char *json, struct QmRelation **out);

/**
 * Releases a relation. NULL is accepted.
 *
 * # Safety
 * `rel` must come from this library and not have been freed.
 */
void qm_relation_free(struct QmRelation *rel);

/**
 * Whether the relation was checked against the normal form when built.
 * Returns false for NULL.
 *
 * # Safety
 * `rel` must be NULL or a live handle.
 */
bool qm_relation_verified(const struct QmRelation *rel);

/**
 * Number of terms on the right-hand side. Returns 0 for NULL.
 *
 * # Safety
 * `rel` must be NULL or a live handle.
 */
uintptr_t qm_relation_term_count(const struct QmRelation *rel);

/**
 * Renders the relation as plain text into `*out`.
 *
 * # Safety
 * `rel` must be a live handle; `out` must be writable.
 */
enum QmStatus qm_relation_to_string(const struct QmRelation *rel, char **out);

/**
 * Renders the relation as JSON into `*out`.
 *
 * # Safety
 * `rel` must be a live handle; `out` must be writable.
 */
enum QmStatus qm_relation_to_json(const struct QmRelation *rel, char **out);

/**
 * Renders the relation as LaTeX into `*out`.
 *
 * # Safety
 * `rel` must be a live handle; `out` must be writable.
 */
enum QmStatus qm_relation_to_latex(const struct QmRelation *rel, char **out);

/**
 * Releases a string returned by this library. NULL is accepted.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void qm_string_free(char *s);

/**
 * Normal form of a tensor such as `"a21.a12 - q*a11.a22"`.
 *
 * # Safety
 * `tensor` must be a NUL-terminated string; `out` must be writable.
 */
enum QmStatus qm_normal_form(const char *tensor, char **out);

/**
 * Sets `*out` to whether the two tensors agree modulo the defining
 * relations.
 *
 * # Safety
 * `a` and `b` must be NUL-terminated strings; `out` must be writable.
 */
enum QmStatus qm_congruent(const char *a, const char *b, bool *out);

/**
 * Checks a relation given as JSON against the normal form; `*out` is true
 * when the residual vanishes.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum QmStatus qm_verify_json(const char *json, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QMINOR_H */
