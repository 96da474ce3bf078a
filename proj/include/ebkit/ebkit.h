// Copyright 2026 The ebkit Authors
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

#ifndef EBKIT_EBKIT_H_
#define EBKIT_EBKIT_H_

#include <stdint.h>

#if defined(_WIN32)
#define EBK_API __declspec(dllexport)
#else
#define EBK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ebk_status {
  EBK_OK = 0,
  EBK_NOT_HERMITIAN = 1,
  EBK_DIM_MISMATCH = 2,
  EBK_DIM_OUT_OF_RANGE = 3,
  EBK_DOMAIN_ERROR = 4,
  EBK_INDEX_OUT_OF_RANGE = 5,
  EBK_LINEARITY_VIOLATION = 6,
  EBK_NOT_PSD = 7,
  EBK_MODE_MISMATCH = 8,
  EBK_PRECONDITION_FAILED = 9,
  EBK_NUMERICAL_FAILURE = 10,
  EBK_CONVERGENCE_FAILURE = 11,
  EBK_PARSE_ERROR = 12,
  EBK_INVALID_ARGUMENT = 100,
  EBK_INTERNAL_ERROR = 101
} ebk_status;

typedef struct ebk_map ebk_map;
typedef struct ebk_gaussian ebk_gaussian;

EBK_API const char* ebk_version(void);
EBK_API const char* ebk_status_name(int status);
/* Message of the last failing call on this thread; never NULL. */
EBK_API const char* ebk_last_error(void);
/* Releases strings returned through char** out-parameters. */
EBK_API void ebk_string_free(char* s);

/* Linear maps M_din -> M_dout held by their Choi matrix. Matrix buffers are
   row-major with (din*dout)^2 entries; im may be NULL for real input. */
EBK_API int ebk_map_from_choi(int din, int dout, const double* re, const double* im, ebk_map** out);
EBK_API int ebk_map_from_json(const char* json, ebk_map** out);
/* Catalog constructor; params_json is an object such as {"d":3,"p":0.5}. */
EBK_API int ebk_map_catalog(const char* name, const char* params_json, ebk_map** out);
EBK_API void ebk_map_free(ebk_map* m);
EBK_API int ebk_map_to_json(const ebk_map* m, char** json);
EBK_API int ebk_map_dims(const ebk_map* m, int* din, int* dout);
EBK_API int ebk_map_choi(const ebk_map* m, double* re, double* im);
EBK_API int ebk_map_compose(const ebk_map* t2, const ebk_map* t1, ebk_map** out);
EBK_API int ebk_map_is_cp(const ebk_map* m, double tol_psd, int* result);
EBK_API int ebk_map_is_cocp(const ebk_map* m, double tol_psd, int* result);
EBK_API int ebk_map_operator_schmidt_rank(const ebk_map* m, int* rank);
/* Report JSON with the applicable 2-entanglement-breaking certificates. */
EBK_API int ebk_map_two_eb_report(const ebk_map* m, uint64_t seed, char** json);
/* Report JSON for PPT and realignment tests and a separable decomposition
   search on the Choi matrix. */
EBK_API int ebk_map_eb_report(const ebk_map* m, uint64_t seed, double tol_psd, char** json);
EBK_API int ebk_map_decomposability(const ebk_map* m, char** json);
EBK_API int ebk_map_counterexample_search(const ebk_map* p, uint64_t seed, int restarts, char** json);

/* Gaussian channels on n modes; x and y are row-major 2n x 2n. */
EBK_API int ebk_gaussian_create(int n, const double* x, const double* y, ebk_gaussian** out);
EBK_API int ebk_gaussian_from_json(const char* json, ebk_gaussian** out);
EBK_API int ebk_gaussian_random_cocp(int n, uint64_t seed, ebk_gaussian** out);
EBK_API void ebk_gaussian_free(ebk_gaussian* c);
EBK_API int ebk_gaussian_to_json(const ebk_gaussian* c, char** json);
EBK_API int ebk_gaussian_compose(const ebk_gaussian* c2, const ebk_gaussian* c1, ebk_gaussian** out);
/* Validity, coCP and entanglement-breaking SDP for one channel. */
EBK_API int ebk_gaussian_report(const ebk_gaussian* c, double tol_psd, char** json);
/* Explicit split of c2 o c1 together with the SDP check of the composition. */
EBK_API int ebk_gaussian_ppt2_report(const ebk_gaussian* c2, const ebk_gaussian* c1, double tol_psd,
                                     char** json);

/* Runs a named example suite. options_json may be NULL or an object with
   any of "d", "p", "n", "seed", "tol_psd". */
EBK_API int ebk_example_names(char** json);
EBK_API int ebk_verify_example(const char* name, const char* options_json, char** report_json, int* passed);

#ifdef __cplusplus
}
#endif

#endif  // EBKIT_EBKIT_H_
