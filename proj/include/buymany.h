/* Copyright 2026 The Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the buymany pricing workbench.
 *
 * Objects are opaque handles created from JSON documents (schemas in
 * docs/FORMATS.md) and released with the matching *_free function. Functions
 * return BM_OK on success; on failure, *err (when non-NULL) receives a
 * malloc'd message to release with bm_string_free. Item subsets are bitsets
 * over item indices 0..n-1 packed into a uint64_t.
 */

#ifndef BUYMANY_H_
#define BUYMANY_H_

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bm_status {
  BM_OK = 0,
  BM_ERROR_VALIDATION = 2, /* bad input or violated precondition */
  BM_ERROR_ASSERTION = 3,  /* a checked inequality failed beyond tolerance */
  BM_ERROR_INTERNAL = 4
} bm_status;

typedef struct bm_pricing bm_pricing;
typedef struct bm_distribution bm_distribution;
typedef struct bm_menu bm_menu;

void bm_string_free(char* s);
const char* bm_version(void);

/* ---- pricings ---- */
bm_status bm_pricing_from_json(const char* json, bm_pricing** out, char** err);
bm_status bm_closure_from_options_json(const char* options_json,
                                       bm_pricing** out, char** err);
bm_status bm_pricing_additive_extension(const bm_pricing* p, bm_pricing** out,
                                        char** err);
void bm_pricing_free(bm_pricing* p);
bm_status bm_pricing_items(const bm_pricing* p, int* out_n);
/* *out may be +infinity for sets no cover reaches. */
bm_status bm_pricing_price(const bm_pricing* p, uint64_t set_bits,
                           double* out, char** err);
bm_status bm_pricing_to_json(const bm_pricing* p, char** out_json, char** err);
bm_status bm_check_sybil_proof(const bm_pricing* p, int* out_monotone,
                               int* out_subadditive, int* out_partial,
                               char** err);

/* ---- valuation distributions ---- */
bm_status bm_distribution_from_json(const char* json, bm_distribution** out,
                                    char** err);
void bm_distribution_free(bm_distribution* d);
bm_status bm_revenue(const bm_distribution* d, const bm_pricing* p,
                     double* out, char** err);

/* ---- lottery menus ---- */
bm_status bm_menu_from_json(const char* json, bm_menu** out, char** err);
void bm_menu_free(bm_menu* m);
bm_status bm_menu_item_floor(const bm_menu* m, int item, double* out_floor,
                             int* out_option, char** err);
bm_status bm_menu_adaptive_cost(const bm_menu* m, uint64_t target_bits,
                                double* out, char** err);
/* *out = 1 when menu option a stochastically dominates option b, else 0. */
bm_status bm_menu_dominates(const bm_menu* m, int option_a, int option_b,
                            int* out, char** err);

/* ---- batch pipelines (CSV text out; one per CLI subcommand) ---- */
bm_status bm_run_verify(const char* pricing_json, char** out_csv, char** err);
bm_status bm_run_closure(const char* options_json, char** out_csv, char** err);
bm_status bm_run_revenue(const char* instance_json, uint64_t seed,
                         char** out_csv, char** err);
/* lo/hi <= 0 select the theorem defaults (1/(2c) and 1). */
bm_status bm_run_scale(const char* instance_json, double lo, double hi,
                       int a_max, char** out_csv, char** err);
/* target_items: comma-separated 0-based item indices, e.g. "0,2,4". */
bm_status bm_run_lottery(const char* menu_json, const char* target_items,
                         char** out_csv, char** err);
bm_status bm_run_lowerbound(int n, int num_sets, int set_size, int max_overlap,
                            int m, int b_min, int samples, uint64_t seed,
                            int threads, uint64_t* out_beta_resamples,
                            char** out_csv, char** err);
bm_status bm_run_coretail(int n, int samples, uint64_t seed, int threads,
                          char** out_csv, char** err);
bm_status bm_run_hartnisan(int n, uint64_t seed, char** out_csv, char** err);

#ifdef __cplusplus
}
#endif

#endif /* BUYMANY_H_ */
