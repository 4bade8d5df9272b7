#ifndef DIMAPF_H
#define DIMAPF_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result codes shared by every fallible entry point.
 */
typedef enum DimapfStatus {
  DIMAPF_STATUS_OK = 0,
  DIMAPF_STATUS_NULL_ARGUMENT = 1,
  DIMAPF_STATUS_INVALID_UTF8 = 2,
  DIMAPF_STATUS_PARSE_ERROR = 3,
  DIMAPF_STATUS_INVALID_INSTANCE = 4,
  DIMAPF_STATUS_INVALID_PLAN = 5,
  DIMAPF_STATUS_RESOURCE_LIMIT = 6,
  DIMAPF_STATUS_INTERNAL = 7,
} DimapfStatus;

typedef enum DimapfVerdict {
  DIMAPF_VERDICT_SOLVABLE = 0,
  DIMAPF_VERDICT_UNSOLVABLE = 1,
  DIMAPF_VERDICT_BOUND_EXHAUSTED = 2,
} DimapfVerdict;

typedef struct DimapfInstance DimapfInstance;

typedef struct DimapfPlan DimapfPlan;

/**
 * Search settings for [`dimapf_solve`]. A zero field means "no limit".
 */
typedef struct DimapfSolveOptions {
  uint64_t depth_bound;
  uint64_t max_states;
  uint64_t time_limit_ms;
} DimapfSolveOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on this thread.
 */
const char *dimapf_last_error(void);

/**
 * Parses an instance document. On success `*out_instance` owns a new handle.
 */
enum DimapfStatus dimapf_instance_parse(const char *document, struct DimapfInstance **out_instance);

void dimapf_instance_free(struct DimapfInstance *instance);

/**
 * Serializes an instance; release the string with [`dimapf_string_free`].
 */
enum DimapfStatus dimapf_instance_to_string(const struct DimapfInstance *instance,
                                            char **out_document);

/**
 * Vertex, arc and agent counts. Any output pointer may be null.
 */
enum DimapfStatus dimapf_instance_counts(const struct DimapfInstance *instance,
                                         size_t *out_vertices,
                                         size_t *out_arcs,
                                         size_t *out_agents);

enum DimapfStatus dimapf_instance_is_dag(const struct DimapfInstance *instance, bool *out_is_dag);

/**
 * Reduces a DIMACS 3-CNF formula to an instance. With `pad` set, shorter
 * clauses are widened by repeating their last literal.
 */
enum DimapfStatus dimapf_reduce_dimacs(const char *dimacs,
                                       bool pad,
                                       struct DimapfInstance **out_instance);

/**
 * Decides solvability. `options` may be null for an unbounded search. When
 * the verdict is solvable and `out_plan` is non-null, `*out_plan` receives a
 * shortest plan; otherwise it is set to null.
 */
enum DimapfStatus dimapf_solve(const struct DimapfInstance *instance,
                               const struct DimapfSolveOptions *options,
                               enum DimapfVerdict *out_verdict,
                               struct DimapfPlan **out_plan);

/**
 * Parses a plan document against the names declared by `instance`.
 */
enum DimapfStatus dimapf_plan_parse(const struct DimapfInstance *instance,
                                    const char *document,
                                    struct DimapfPlan **out_plan);

void dimapf_plan_free(struct DimapfPlan *plan);

/**
 * Number of moves, or 0 for a null handle.
 */
size_t dimapf_plan_len(const struct DimapfPlan *plan);

enum DimapfStatus dimapf_plan_to_string(const struct DimapfInstance *instance,
                                        const struct DimapfPlan *plan,
                                        char **out_document);

/**
 * `DIMAPF_STATUS_OK` when the plan is valid, `DIMAPF_STATUS_INVALID_PLAN`
 * otherwise. `out_failed_move` (nullable) receives the index of the first
 * illegal move, or the plan length when every move is legal but the goal is
 * not reached.
 */
enum DimapfStatus dimapf_validate_plan(const struct DimapfInstance *instance,
                                       const struct DimapfPlan *plan,
                                       size_t *out_failed_move);

void dimapf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIMAPF_H */
