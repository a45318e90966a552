#ifndef TORIC_A1_H
#define TORIC_A1_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. The first four match the command-line exit codes.
 */
typedef enum ToricStatus {
  TORIC_STATUS_OK = 0,
  TORIC_STATUS_VALIDATION = 1,
  TORIC_STATUS_MALFORMED = 2,
  TORIC_STATUS_INTERNAL = 3,
  TORIC_STATUS_NULL_POINTER = 4,
  TORIC_STATUS_INVALID_UTF8 = 5,
} ToricStatus;

/**
 * Opaque fan handle.
 */
typedef struct ToricFan ToricFan;

/**
 * Opaque homotopy report handle.
 */
typedef struct ToricReport ToricReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string. Do not free.
 */
const char *toric_version(void);

/**
 * Message of the last failure on this thread, or NULL. Valid until the next
 * call into this library on the same thread. Do not free.
 */
const char *toric_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void toric_string_free(char *s);

/**
 * Parses fan JSON. Shape errors give `MALFORMED`; the fan is not validated.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum ToricStatus toric_fan_from_json(const char *json, struct ToricFan **out);

/**
 * # Safety
 * `out` must be a writable pointer.
 */
enum ToricStatus toric_fan_projective_space(size_t n, struct ToricFan **out);

/**
 * # Safety
 * `out` must be a writable pointer.
 */
enum ToricStatus toric_fan_hirzebruch(uint64_t a, struct ToricFan **out);

/**
 * # Safety
 * `a` must point to `len` readable values (it may be NULL when `len` is 0)
 * and `out` must be a writable pointer.
 */
enum ToricStatus toric_fan_kleinschmidt(size_t d,
                                        const uint64_t *a,
                                        size_t len,
                                        struct ToricFan **out);

/**
 * Star subdivision at the cone with the given ray indices.
 *
 * # Safety
 * `fan` must be a live handle, `cone` must point to `len` readable indices
 * and `out` must be a writable pointer.
 */
enum ToricStatus toric_fan_star_subdivision(const struct ToricFan *fan,
                                            const size_t *cone,
                                            size_t len,
                                            struct ToricFan **out);

/**
 * Ambient dimension, or 0 for NULL.
 *
 * # Safety
 * `fan` must be NULL or a live handle.
 */
size_t toric_fan_dim(const struct ToricFan *fan);

/**
 * Number of rays, or 0 for NULL.
 *
 * # Safety
 * `fan` must be NULL or a live handle.
 */
size_t toric_fan_num_rays(const struct ToricFan *fan);

/**
 * Canonical fan JSON.
 *
 * # Safety
 * `fan` must be a live handle and `out` a writable pointer.
 */
enum ToricStatus toric_fan_to_json(const struct ToricFan *fan, char **out);

/**
 * Validation report as JSON. Returns `VALIDATION` when the fan is not a
 * smooth fan; the report is written either way.
 *
 * # Safety
 * `fan` must be a live handle and `out` a writable pointer.
 */
enum ToricStatus toric_fan_validate(const struct ToricFan *fan, char **out);

/**
 * # Safety
 * `fan` must be NULL or a handle from this library, not yet freed.
 */
void toric_fan_free(struct ToricFan *fan);

/**
 * Homotopy report for a smooth complete fan.
 *
 * # Safety
 * `fan` must be a live handle and `out` a writable pointer.
 */
enum ToricStatus toric_analyze(const struct ToricFan *fan, struct ToricReport **out);

/**
 * π1 in the group-expression grammar.
 *
 * # Safety
 * `report` must be a live handle and `out` a writable pointer.
 */
enum ToricStatus toric_report_pi1(const struct ToricReport *report, char **out);

/**
 * Group in degree `i`, or `MALFORMED` when the report leaves it undetermined.
 *
 * # Safety
 * `report` must be a live handle and `out` a writable pointer.
 */
enum ToricStatus toric_report_group(const struct ToricReport *report, size_t i, char **out);

/**
 * Picard rank, or 0 for NULL.
 *
 * # Safety
 * `report` must be NULL or a live handle.
 */
size_t toric_report_pic_rank(const struct ToricReport *report);

/**
 * Full report as pretty JSON.
 *
 * # Safety
 * `report` must be a live handle and `out` a writable pointer.
 */
enum ToricStatus toric_report_to_json(const struct ToricReport *report, char **out);

/**
 * # Safety
 * `report` must be NULL or a handle from this library, not yet freed.
 */
void toric_report_free(struct ToricReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORIC_A1_H */
