/* Copyright 2026 The zqoc Authors
 * SPDX-License-Identifier: Apache-2.0 */

#ifndef ZQOC_H
#define ZQOC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. Values 1–4 match the command-line exit codes.
 */
typedef enum {
  ZQOC_STATUS_OK = 0,
  ZQOC_STATUS_NUMERICAL = 1,
  ZQOC_STATUS_INVALID_INPUT = 2,
  ZQOC_STATUS_STRONG_WIND = 3,
  ZQOC_STATUS_NO_ROOT = 4,
  ZQOC_STATUS_NULL_POINTER = 6,
  ZQOC_STATUS_PANIC = 7,
  ZQOC_STATUS_BUFFER_TOO_SMALL = 8,
} ZqocStatus;

/**
 * A parsed and validated problem configuration.
 */
typedef struct ZqocProblem ZqocProblem;

/**
 * A solved time-optimal geodesic with its control-field basis.
 */
typedef struct ZqocSolution ZqocSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next `zqoc_*` call on the same thread.
 */
const char *zqoc_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *zqoc_version(void);

/**
 * Parses a JSON problem configuration.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
ZqocStatus zqoc_problem_new(const char *json, ZqocProblem **out);

/**
 * # Safety
 * `problem` must come from `zqoc_problem_new` and not be used afterwards. NULL is ignored.
 */
void zqoc_problem_free(ZqocProblem *problem);

/**
 * Matrix dimension n of the problem.
 *
 * # Safety
 * Both pointers must be valid.
 */
ZqocStatus zqoc_problem_dim(const ZqocProblem *problem, size_t *out);

/**
 * Solves for the optimal time and geodesic.
 *
 * # Safety
 * `problem` must be a live handle and `out` a valid pointer.
 */
ZqocStatus zqoc_solve(const ZqocProblem *problem, ZqocSolution **out);

/**
 * # Safety
 * `solution` must come from `zqoc_solve` and not be used afterwards. NULL is ignored.
 */
void zqoc_solution_free(ZqocSolution *solution);

/**
 * # Safety
 * Both pointers must be valid.
 */
ZqocStatus zqoc_solution_t_opt(const ZqocSolution *solution, double *out);

/**
 * Number of control fields, i.e. n² − 1.
 *
 * # Safety
 * Both pointers must be valid.
 */
ZqocStatus zqoc_solution_field_count(const ZqocSolution *solution, size_t *out);

/**
 * Propagator U(t) for 0 ≤ t ≤ T.
 *
 * # Safety
 * `re` and `im` must each hold `len` doubles.
 */
ZqocStatus zqoc_solution_trajectory(const ZqocSolution *solution,
                                    double t,
                                    double *re,
                                    double *im,
                                    size_t len);

/**
 * Hermitian control Hamiltonian Ĥ_c(t) for 0 ≤ t ≤ T.
 *
 * # Safety
 * `re` and `im` must each hold `len` doubles.
 */
ZqocStatus zqoc_solution_control_hamiltonian(const ZqocSolution *solution,
                                             double t,
                                             double *re,
                                             double *im,
                                             size_t len);

/**
 * Control fields f_k(t) in the generator basis, as written by the CLI.
 *
 * # Safety
 * `fields` must hold `len` doubles.
 */
ZqocStatus zqoc_solution_control_fields(const ZqocSolution *solution,
                                        double t,
                                        double *fields,
                                        size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZQOC_H */
