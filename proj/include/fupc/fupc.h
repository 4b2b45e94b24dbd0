// Copyright 2026 The fupc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// C interface to the fupc library. Every call returns a status code; on
// failure fupc_last_error() holds a message for the calling thread. Handles
// are opaque and owned by the caller, who releases them with the matching
// *_free function. Report functions fill a fupc_result holding the rendered
// CSV or JSON text.

#ifndef FUPC_FUPC_H_
#define FUPC_FUPC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FUPC_API __declspec(dllexport)
#else
#define FUPC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fupc_status {
  FUPC_OK = 0,
  FUPC_ERR_INVALID_ARGUMENT = 1,
  FUPC_ERR_PARSE = 2,
  FUPC_ERR_BASE_TOO_SMALL = 3,
  FUPC_ERR_DIGIT_OUT_OF_RANGE = 4,
  FUPC_ERR_DUPLICATE_DIGIT = 5,
  FUPC_ERR_EMPTY_ALPHABET = 6,
  FUPC_ERR_ORDER_TOO_LARGE = 7,
  FUPC_ERR_ORDER_TOO_SMALL = 8,
  FUPC_ERR_INDEX_OUT_OF_RANGE = 9,
  FUPC_ERR_LENGTH_MISMATCH = 10,
  FUPC_ERR_DENSE_CAP_EXCEEDED = 11,
  FUPC_ERR_TRIVIAL_ALPHABET = 12,
  FUPC_ERR_ENUMERATION_TOO_LARGE = 13,
  FUPC_ERR_BASE_MISMATCH = 14,
  FUPC_ERR_SHAPE_MISMATCH = 15,
  FUPC_ERR_NONPOSITIVE_LIPSCHITZ = 16,
  FUPC_ERR_NONPOSITIVE_INPUT = 17,
  FUPC_ERR_CERTIFICATE_VIOLATION = 18,
  FUPC_ERR_INVARIANT_FAILURE = 19,
  FUPC_ERR_NULL_ARGUMENT = 20,
  FUPC_ERR_INTERNAL = 21
} fupc_status;

// Stable lower-case name, e.g. "order_too_large".
FUPC_API const char* fupc_status_name(fupc_status status);

// Process exit code for a status: 0 for FUPC_OK, 2 when a size cap was
// exceeded, 3 for an invariant or certificate failure, 1 otherwise.
FUPC_API int fupc_status_exit_code(fupc_status status);

// Message of the most recent failing call on this thread ("" if none). The
// pointer stays valid until the next failing call on the same thread.
FUPC_API const char* fupc_last_error(void);

FUPC_API const char* fupc_version(void);

// Run options. Defaults: 1 thread, seed 1, CSV, timestamp line on, N cap
// 10^5, enumeration cap 10^7, dense cap 512.
typedef struct fupc_options fupc_options;

FUPC_API fupc_options* fupc_options_new(void);
FUPC_API void fupc_options_free(fupc_options* options);
FUPC_API fupc_status fupc_options_set_threads(fupc_options* options, int threads);
FUPC_API fupc_status fupc_options_set_seed(fupc_options* options, uint64_t seed);
// "csv" or "json".
FUPC_API fupc_status fupc_options_set_format(fupc_options* options, const char* format);
FUPC_API fupc_status fupc_options_set_timestamp(fupc_options* options, int enabled);
FUPC_API fupc_status fupc_options_set_n_cap(fupc_options* options, uint64_t cap);
FUPC_API fupc_status fupc_options_set_enumeration_cap(fupc_options* options, uint64_t cap);
FUPC_API fupc_status fupc_options_set_dense_cap(fupc_options* options, uint64_t cap);
// Extra key/value pair echoed in the config header, e.g. the config file
// path. The value is stored as a string.
FUPC_API fupc_status fupc_options_add_echo(fupc_options* options, const char* key,
                                           const char* value);

typedef struct fupc_result fupc_result;

// Rendered output, NUL-terminated.
FUPC_API const char* fupc_result_text(const fupc_result* result);
FUPC_API size_t fupc_result_size(const fupc_result* result);
// Number of data rows in the first table.
FUPC_API size_t fupc_result_rows(const fupc_result* result);
// Asserted properties that failed (volume-bound domination, tail bounds,
// verify checks, ...). The text is still complete when this is nonzero.
FUPC_API size_t fupc_result_failed_checks(const fupc_result* result);
FUPC_API void fupc_result_free(fupc_result* result);

// r_k and beta_k for alphabet "M:d0,d1,...", k = 1..k_max. method is
// "power" or "lanczos" (NULL means power). Adds a dense k = 1 row when A is
// within the dense cap, and a summary table with beta_lower.
FUPC_API fupc_status fupc_run_beta(const fupc_options* options, const char* alphabet,
                                   int k_max, double tol, const char* method,
                                   fupc_result** out);

// Per-alphabet beta_lower over the (m, a) space plus a curve summary.
// mc_samples = 0 enumerates exactly; k_max <= 0 picks the largest k <= 4 with
// M^k within the N cap. epsilon > 0 adds the probabilistic FUP record at
// threshold 1/2 - 3 delta/4 - epsilon.
FUPC_API fupc_status fupc_run_sweep(const fupc_options* options, int m, int a,
                                    uint64_t mc_samples, int k_max, double epsilon,
                                    fupc_result** out);

// One exact curve point for every 1 < A < M, m_lo <= M <= m_hi.
FUPC_API fupc_status fupc_run_figure1(const fupc_options* options, int m_lo, int m_hi,
                                      int k_max, fupc_result** out);

// Tail report for the exponential sum at frequency freq on a grid of
// `points` values over [0, t_max] (t_max <= 0 means 2A).
FUPC_API fupc_status fupc_run_concentration(const fupc_options* options, int m, int a,
                                            int64_t freq, uint64_t mc_samples,
                                            double t_max, int points, fupc_result** out);

// Measure of the good set at level L with both union bounds.
FUPC_API fupc_status fupc_run_goodset(const fupc_options* options, int m, int a,
                                      double level, uint64_t mc_samples,
                                      fupc_result** out);

// Spectral radius and norm of the open quantum map for k_lo..k_hi.
FUPC_API fupc_status fupc_run_oqm(const fupc_options* options, const char* alphabet,
                                  int k_lo, int k_hi, double epsilon, fupc_result** out);

// The invariant suite; failed checks are counted in the result.
FUPC_API fupc_status fupc_run_verify(const fupc_options* options, int quick,
                                     fupc_result** out);

// Scalar helpers. Either output pointer may be NULL.
FUPC_API fupc_status fupc_rk(const char* alphabet, int k, double tol, uint64_t seed,
                             double* r_k, double* beta_k);
FUPC_API fupc_status fupc_r1_dense(const char* alphabet, double* r_1);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // FUPC_FUPC_H_
