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
//
// Batch pipelines: the Hart-Nisan instance family, seeded random instance
// generators, and one CSV-producing runner per CLI subcommand. Every
// randomized pipeline derives per-task seeds from the root seed by counter,
// so output bytes are identical for every thread count.

#ifndef BUYMANY_EXPERIMENTS_HPP_
#define BUYMANY_EXPERIMENTS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "buymany/lattice.hpp"
#include "buymany/lowerbound.hpp"
#include "buymany/rng.hpp"

namespace buymany {

struct HartNisanInstance {
  ValuationDistribution d;
  std::vector<PricedSet> options;  // raw buy-one menu: (S_i, n^{i-1})
  Pricing closure;                 // buy-many closure of the options
};

// The intro family: subsets ordered by (size, bitset value); type i has
// probability proportional to n^{-i} and additive value n^i/|S_i| on S_i;
// option i sells S_i at n^{i-1}. 2 <= n <= 8.
HartNisanInstance gen_hart_nisan(int n);

// Random monotone subadditive pricing: the closure of a singleton-complete
// option list with dyadic-rational prices (every sum and min stays exact in
// binary floating point).
Pricing random_subadditive_pricing(ItemUniverse u, Rng& rng);

std::vector<double> random_marginals(int n, Rng& rng);

// Random monotone valuation (running-max explicit table, dyadic values).
Valuation random_monotone_valuation(ItemUniverse u, Rng& rng);

ValuationDistribution random_distribution(ItemUniverse u, int max_types,
                                          Rng& rng);

// ---- CSV pipelines (one per CLI subcommand) ----

std::string run_verify(const std::string& pricing_json);
std::string run_closure(const std::string& options_json);
std::string run_revenue(const std::string& instance_json, std::uint64_t seed);

struct ScaleParams {
  double lo = 0.0;  // <= 0 selects the default 1/(2c)
  double hi = 0.0;  // <= 0 selects the default 1
  int a_max = 64;
};
std::string run_scale(const std::string& instance_json,
                      const ScaleParams& params);

std::string run_lottery(const std::string& menu_json,
                        const std::string& target_items);

struct LowerboundParams {
  int n = 48;
  int num_sets = 24;
  int set_size = 6;
  int max_overlap = 1;
  int m = 6;
  int b_min = 4;
  int samples = 200;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware
};
struct LowerboundOutput {
  std::string csv;
  std::uint64_t beta_resamples = 0;  // draws rejected by the constructor
};
LowerboundOutput run_lowerbound(const LowerboundParams& params);

struct CoretailParams {
  int n = 10;
  int samples = 100;
  std::uint64_t seed = 0;
  int threads = 0;
};
std::string run_coretail(const CoretailParams& params);

std::string run_hartnisan(int n, std::uint64_t seed);

}  // namespace buymany

#endif  // BUYMANY_EXPERIMENTS_HPP_
