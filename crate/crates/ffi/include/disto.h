#ifndef DISTO_H
#define DISTO_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DistoStatus {
  DISTO_STATUS_OK = 0,
  DISTO_STATUS_NULL_POINTER = 1,
  DISTO_STATUS_INVALID_PARAMETER = 2,
  DISTO_STATUS_PARSE = 3,
  DISTO_STATUS_BUDGET_EXCEEDED = 4,
  DISTO_STATUS_OUTSIDE_BALL = 5,
  DISTO_STATUS_HORIZON = 6,
  DISTO_STATUS_VIOLATION = 7,
  DISTO_STATUS_INTERNAL = 8,
} DistoStatus;

/**
 * An enumerated ball of the Cayley graph.
 */
typedef struct DistoBall DistoBall;

/**
 * A closed surface group with its Dehn rewriter.
 */
typedef struct DistoGroup DistoGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message for the last failure on this thread, or an empty string.
 * Valid until the next call into this library from the same thread.
 */
const char *disto_last_error(void);

/**
 * The fundamental group of the closed orientable surface of genus `genus ≥ 2`.
 *
 * # Safety
 * `out_group` must be a valid pointer.
 */
enum DistoStatus disto_group_new(size_t genus, struct DistoGroup **out_group);

/**
 * # Safety
 * `group` must come from `disto_group_new` and not be used afterwards. NULL is ignored.
 */
void disto_group_free(struct DistoGroup *group);

/**
 * Whether `word` (letters such as `a1 B2`, uppercase for inverses) is trivial.
 *
 * # Safety
 * `group` must be a live handle, `word` a NUL-terminated string, `out_trivial` valid.
 */
enum DistoStatus disto_group_is_trivial(const struct DistoGroup *group,
                                        const char *word,
                                        bool *out_trivial);

/**
 * Enumerates the ball of radius `radius` around the base face.
 *
 * # Safety
 * `group` must be a live handle and `out_ball` valid.
 */
enum DistoStatus disto_ball_new(const struct DistoGroup *group,
                                size_t radius,
                                struct DistoBall **out_ball);

/**
 * # Safety
 * `ball` must come from `disto_ball_new` and not be used afterwards. NULL is ignored.
 */
void disto_ball_free(struct DistoBall *ball);

/**
 * Writes up to `capacity` sphere sizes into `sizes` and the total count,
 * `radius + 1`, into `out_count`. Pass `capacity = 0` to query the count.
 *
 * # Safety
 * `ball` must be a live handle, `sizes` valid for `capacity` writes, `out_count` valid.
 */
enum DistoStatus disto_ball_sphere_sizes(const struct DistoBall *ball,
                                         size_t *sizes,
                                         size_t capacity,
                                         size_t *out_count);

/**
 * Distance between the faces `u(D0)` and `v(D0)`, both inside the ball.
 *
 * # Safety
 * `ball` must be a live handle, `u` and `v` NUL-terminated strings, `out_distance` valid.
 */
enum DistoStatus disto_ball_distance(const struct DistoBall *ball,
                                     const char *u,
                                     const char *v,
                                     size_t *out_distance);

/**
 * `14·⌊log2 n⌋ + 14` for `n ≥ 1`.
 *
 * # Safety
 * `out_bound` must be valid.
 */
enum DistoStatus disto_avila_bound(uint64_t n, uint64_t *out_bound);

/**
 * The delay schedule for the reach map `reach[0..len]`, as a JSON string
 * to be released with `disto_string_free`.
 *
 * # Safety
 * `reach` must be valid for `len` reads and `out_json` valid.
 */
enum DistoStatus disto_annulus_schedule_json(const uint64_t *reach, size_t len, char **out_json);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. NULL is ignored.
 */
void disto_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DISTO_H */
