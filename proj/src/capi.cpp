// Copyright 2026 The Authors.
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

#include "buymany.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "buymany/demand.hpp"
#include "buymany/experiments.hpp"
#include "buymany/json_io.hpp"
#include "buymany/lattice.hpp"
#include "buymany/lottery.hpp"

using buymany::Error;
using buymany::ErrorKind;

struct bm_pricing {
  buymany::Pricing impl;
};
struct bm_distribution {
  buymany::ValuationDistribution impl;
};
struct bm_menu {
  buymany::LotteryMenu impl;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_error(char** err, const std::string& message) {
  if (err != nullptr) *err = dup_string(message);
}

template <typename Fn>
bm_status guarded(char** err, Fn&& fn) {
  try {
    fn();
    return BM_OK;
  } catch (const Error& e) {
    set_error(err, e.what());
    return e.kind() == ErrorKind::kAssertion ? BM_ERROR_ASSERTION
                                             : BM_ERROR_VALIDATION;
  } catch (const std::bad_alloc&) {
    set_error(err, "out of memory");
    return BM_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(err, e.what());
    return BM_ERROR_INTERNAL;
  }
}

bm_status require_handle(const void* handle, char** err) {
  if (handle == nullptr) {
    set_error(err, "null handle");
    return BM_ERROR_VALIDATION;
  }
  return BM_OK;
}

}  // namespace

extern "C" {

void bm_string_free(char* s) { std::free(s); }

const char* bm_version(void) { return "buymany 1.0.0"; }

bm_status bm_pricing_from_json(const char* json, bm_pricing** out,
                               char** err) {
  if (json == nullptr || out == nullptr) {
    set_error(err, "null argument");
    return BM_ERROR_VALIDATION;
  }
  return guarded(err, [&] {
    *out = new bm_pricing{buymany::pricing_doc_from_json(json)};
  });
}

bm_status bm_closure_from_options_json(const char* options_json,
                                       bm_pricing** out, char** err) {
  if (options_json == nullptr || out == nullptr) {
    set_error(err, "null argument");
    return BM_ERROR_VALIDATION;
  }
  return guarded(err, [&] {
    auto [options, u] = buymany::options_doc_from_json(options_json);
    *out = new bm_pricing{buymany::buy_many_closure(options, u)};
  });
}

bm_status bm_pricing_additive_extension(const bm_pricing* p, bm_pricing** out,
                                        char** err) {
  if (bm_status s = require_handle(p, err); s != BM_OK) return s;
  if (out == nullptr) {
    set_error(err, "null argument");
    return BM_ERROR_VALIDATION;
  }
  return guarded(err, [&] {
    *out = new bm_pricing{buymany::additive_extension(p->impl)};
  });
}

void bm_pricing_free(bm_pricing* p) { delete p; }

bm_status bm_pricing_items(const bm_pricing* p, int* out_n) {
  if (p == nullptr || out_n == nullptr) return BM_ERROR_VALIDATION;
  *out_n = p->impl.n();
  return BM_OK;
}

bm_status bm_pricing_price(const bm_pricing* p, uint64_t set_bits, double* out,
                           char** err) {
  if (bm_status s = require_handle(p, err); s != BM_OK) return s;
  if (out == nullptr) {
    set_error(err, "null argument");
    return BM_ERROR_VALIDATION;
  }
  return guarded(err, [&] {
    buymany::require(
        buymany::is_subset(set_bits, p->impl.universe().full_mask()),
        "set exceeds the universe");
    *out = p->impl.price(set_bits);
  });
}

bm_status bm_pricing_to_json(const bm_pricing* p, char** out_json,
                             char** err) {
  if (bm_status s = require_handle(p, err); s != BM_OK) return s;
  if (out_json == nullptr) {
    set_error(err, "null argument");
    return BM_ERROR_VALIDATION;
  }
  return guarded(err, [&] {
    *out_json = dup_string(buymany::pricing_doc_to_json(p->impl));
  });
}

bm_status bm_check_sybil_proof(const bm_pricing* p, int* out_monotone,
                               int* out_subadditive, int* out_partial,
                               char** err) {
  if (bm_status s = require_handle(p, err); s != BM_OK) return s;
  return guarded(err, [&] {
    buymany::CheckReport report =
        buymany::check_deterministic_sybil_proof(p->impl);
    if (out_monotone != nullptr) *out_monotone = report.monotone ? 1 : 0;
    if (out_subadditive != nullptr) {
      *out_subadditive = report.subadditive ? 1 : 0;
    }
    if (out_partial != nullptr) *out_partial = report.partial ? 1 : 0;
  });
}

bm_status bm_distribution_from_json(const char* json, bm_distribution** out,
                                    char** err) {
  if (json == nullptr || out == nullptr) {
    set_error(err, "null argument");
    return BM_ERROR_VALIDATION;
  }
  return guarded(err, [&] {
    *out = new bm_distribution{buymany::distribution_doc_from_json(json)};
  });
}

void bm_distribution_free(bm_distribution* d) { delete d; }

bm_status bm_revenue(const bm_distribution* d, const bm_pricing* p,
                     double* out, char** err) {
  if (bm_status s = require_handle(d, err); s != BM_OK) return s;
  if (bm_status s = require_handle(p, err); s != BM_OK) return s;
  if (out == nullptr) {
    set_error(err, "null argument");
    return BM_ERROR_VALIDATION;
  }
  return guarded(err, [&] { *out = buymany::revenue(d->impl, p->impl); });
}

bm_status bm_menu_from_json(const char* json, bm_menu** out, char** err) {
  if (json == nullptr || out == nullptr) {
    set_error(err, "null argument");
    return BM_ERROR_VALIDATION;
  }
  return guarded(err,
                 [&] { *out = new bm_menu{buymany::menu_doc_from_json(json)}; });
}

void bm_menu_free(bm_menu* m) { delete m; }

bm_status bm_menu_item_floor(const bm_menu* m, int item, double* out_floor,
                             int* out_option, char** err) {
  if (bm_status s = require_handle(m, err); s != BM_OK) return s;
  return guarded(err, [&] {
    buymany::require(item >= 0 && item < m->impl.n(), "item out of range");
    buymany::ItemFloors floors = buymany::lottery_item_floor(m->impl);
    if (out_floor != nullptr) *out_floor = floors.floor[item];
    if (out_option != nullptr) *out_option = floors.option_index[item];
  });
}

bm_status bm_menu_adaptive_cost(const bm_menu* m, uint64_t target_bits,
                                double* out, char** err) {
  if (bm_status s = require_handle(m, err); s != BM_OK) return s;
  if (out == nullptr) {
    set_error(err, "null argument");
    return BM_ERROR_VALIDATION;
  }
  return guarded(err, [&] {
    *out = buymany::adaptive_acquisition_cost(m->impl, target_bits);
  });
}

bm_status bm_menu_dominates(const bm_menu* m, int option_a, int option_b,
                            int* out, char** err) {
  if (bm_status s = require_handle(m, err); s != BM_OK) return s;
  if (out == nullptr) {
    set_error(err, "null argument");
    return BM_ERROR_VALIDATION;
  }
  return guarded(err, [&] {
    const auto& options = m->impl.options();
    buymany::require(option_a >= 0 &&
                         option_a < static_cast<int>(options.size()) &&
                         option_b >= 0 &&
                         option_b < static_cast<int>(options.size()),
                     "option index out of range");
    *out = buymany::dominates(options[option_a].lottery,
                              options[option_b].lottery)
               ? 1
               : 0;
  });
}

bm_status bm_run_verify(const char* pricing_json, char** out_csv, char** err) {
  if (pricing_json == nullptr || out_csv == nullptr) {
    set_error(err, "null argument");
    return BM_ERROR_VALIDATION;
  }
  return guarded(err, [&] {
    *out_csv = dup_string(buymany::run_verify(pricing_json));
  });
}

bm_status bm_run_closure(const char* options_json, char** out_csv,
                         char** err) {
  if (options_json == nullptr || out_csv == nullptr) {
    set_error(err, "null argument");
    return BM_ERROR_VALIDATION;
  }
  return guarded(err, [&] {
    *out_csv = dup_string(buymany::run_closure(options_json));
  });
}

bm_status bm_run_revenue(const char* instance_json, uint64_t seed,
                         char** out_csv, char** err) {
  if (instance_json == nullptr || out_csv == nullptr) {
    set_error(err, "null argument");
    return BM_ERROR_VALIDATION;
  }
  return guarded(err, [&] {
    *out_csv = dup_string(buymany::run_revenue(instance_json, seed));
  });
}

bm_status bm_run_scale(const char* instance_json, double lo, double hi,
                       int a_max, char** out_csv, char** err) {
  if (instance_json == nullptr || out_csv == nullptr) {
    set_error(err, "null argument");
    return BM_ERROR_VALIDATION;
  }
  return guarded(err, [&] {
    buymany::ScaleParams params;
    params.lo = lo;
    params.hi = hi;
    params.a_max = a_max;
    *out_csv = dup_string(buymany::run_scale(instance_json, params));
  });
}

bm_status bm_run_lottery(const char* menu_json, const char* target_items,
                         char** out_csv, char** err) {
  if (menu_json == nullptr || target_items == nullptr || out_csv == nullptr) {
    set_error(err, "null argument");
    return BM_ERROR_VALIDATION;
  }
  return guarded(err, [&] {
    *out_csv = dup_string(buymany::run_lottery(menu_json, target_items));
  });
}

bm_status bm_run_lowerbound(int n, int num_sets, int set_size, int max_overlap,
                            int m, int b_min, int samples, uint64_t seed,
                            int threads, uint64_t* out_beta_resamples,
                            char** out_csv, char** err) {
  if (out_csv == nullptr) {
    set_error(err, "null argument");
    return BM_ERROR_VALIDATION;
  }
  return guarded(err, [&] {
    buymany::LowerboundParams params;
    params.n = n;
    params.num_sets = num_sets;
    params.set_size = set_size;
    params.max_overlap = max_overlap;
    params.m = m;
    params.b_min = b_min;
    params.samples = samples;
    params.seed = seed;
    params.threads = threads;
    buymany::LowerboundOutput output = buymany::run_lowerbound(params);
    if (out_beta_resamples != nullptr) {
      *out_beta_resamples = output.beta_resamples;
    }
    *out_csv = dup_string(output.csv);
  });
}

bm_status bm_run_coretail(int n, int samples, uint64_t seed, int threads,
                          char** out_csv, char** err) {
  if (out_csv == nullptr) {
    set_error(err, "null argument");
    return BM_ERROR_VALIDATION;
  }
  return guarded(err, [&] {
    buymany::CoretailParams params;
    params.n = n;
    params.samples = samples;
    params.seed = seed;
    params.threads = threads;
    *out_csv = dup_string(buymany::run_coretail(params));
  });
}

bm_status bm_run_hartnisan(int n, uint64_t seed, char** out_csv, char** err) {
  if (out_csv == nullptr) {
    set_error(err, "null argument");
    return BM_ERROR_VALIDATION;
  }
  return guarded(err, [&] {
    *out_csv = dup_string(buymany::run_hartnisan(n, seed));
  });
}

}  // extern "C"
