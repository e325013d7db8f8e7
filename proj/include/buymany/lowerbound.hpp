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
// Hard-instance families: almost-disjoint set systems, truncated-geometric
// value vectors, single-minded and additive instances whose pricing extracts
// half the surplus, the approximation-from-below ratio, and the
// cardinality-and-coverage matroid rank oracle.

#ifndef BUYMANY_LOWERBOUND_HPP_
#define BUYMANY_LOWERBOUND_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "buymany/demand.hpp"
#include "buymany/lattice.hpp"
#include "buymany/simple_opt.hpp"

namespace buymany {

struct SetSystemParams {
  int n = 0;          // ground size
  int num_sets = 0;   // N
  int set_size = 0;   // d
  int max_overlap = 0;  // t: |S_i ∩ S_j| <= t for i != j
  int max_tries = 100000;

  void validate() const;
};

// Seeded rejection sampling: draw uniform d-subsets, keep each if its
// intersection with every kept set is <= t. Errors (reporting how many sets
// were placed) when the budget runs out.
std::vector<Mask> gen_set_system(const SetSystemParams& params,
                                 std::uint64_t seed);

struct BetaVector {
  std::vector<long long> values;  // each 2^k * b_min, k in 1..m
  int b_min = 0;
  int m = 0;

  long long b_max_nominal() const { return (1LL << m) * b_min; }
};

// N independent draws with Pr[b = 2^k b_min] = 2^{-k}/(1 - 2^{-m}), k=1..m.
BetaVector sample_beta(int num_sets, int m, int b_min, std::uint64_t seed);

struct MatroidSpec {
  std::vector<Mask> sets;
  std::vector<long long> beta;
  long long mu = 0;
  int tau = 0;
  ItemUniverse universe;

  void validate() const;  // budgets: ground <= 14, N <= 6, tau <= 4
};

// Coverage function h(J) = sum_{j in J} b_j - (mu |J| - |S(J)|).
long long coverage_h(const MatroidSpec& spec, std::uint32_t j_mask);

// I independent iff |I| <= mu and |I ∩ S(J)| <= h(J) for all |J| < tau.
bool matroid_independent(const MatroidSpec& spec, Mask set);

// Rank = size of a maximum independent subset, computed greedily (matroid
// exchange makes greedy exact given the oracle).
int matroid_rank(const MatroidSpec& spec, Mask set);

// h(J) >= 0 for |J| < tau and h(J) >= mu for tau <= |J| <= 2 tau - 2.
bool check_mu_tau_large(const MatroidSpec& spec);

enum class CompletionMode { kCover, kMatroid };

struct LowerBoundInstance {
  ValuationDistribution d;
  Pricing p;
  DemandDistribution pi;
  CompletionMode mode;
  double expected_revenue = 0.0;  // sum b_i / (2N), verified on construction
};

// Theorem-7 style instance: D uniform over SingleMinded(S_i, b_i), p = half
// of the completion of p(S_i) = b_i, Pi uniform over the sets. The revenue
// identity revenue(D, p) = sum b_i/(2N) is verified on construction; a beta
// draw for which the completion undercuts some b_i (possible at desk-scale
// parameters, impossible at paper scale) is rejected with a validation error
// so callers can resample.
LowerBoundInstance build_singleminded_instance(
    const std::vector<Mask>& sets, const BetaVector& beta, ItemUniverse u,
    CompletionMode mode,
    const std::optional<MatroidSpec>& matroid_spec = std::nullopt,
    const ToleranceConfig& tol = {});

// Theorem-8 style instance: D uniform over additive v_i = b_i/|S_i| on S_i,
// p the cover closure of {(S_i, b_i/2)}. Requires the no-arbitrage condition
// t * b_max / d <= b_min / 2; asserts each type pays exactly b_i/2.
LowerBoundInstance build_additive_instance(const std::vector<Mask>& sets,
                                           const BetaVector& beta,
                                           ItemUniverse u,
                                           const ToleranceConfig& tol = {});

// Smallest c for which q c-approximates p from below over pi:
//   E[p(S)] / E[q(S) 1{q(S) <= p(S) + eps}]  (+infinity when the denominator
// vanishes).
double approx_from_below_ratio(const Pricing& q, const Pricing& p,
                               const DemandDistribution& pi,
                               const ToleranceConfig& tol = {});

struct AdversaryReport {
  std::string name;
  double revenue_d = 0.0;  // exact revenue against the instance distribution
  double afb_ratio = 0.0;  // approx-from-below ratio against (p, Pi)
};

struct GapReport {
  double rev_p = 0.0;
  std::vector<AdversaryReport> adversaries;  // brev, srev, best scaled ext
  double brev = 0.0;
  double srev = 0.0;
  bool srev_exact = false;
  double best_scaled = 0.0;
};

struct GapConfig {
  int scaled_levels = 8;    // adversaries 2^{-j} q_ext for j = 0..levels-1
  int grid_levels = 16;
  std::uint64_t seed = 0;
};

GapReport gap_report(const LowerBoundInstance& inst, const GapConfig& config,
                     const ToleranceConfig& tol = {});

}  // namespace buymany

#endif  // BUYMANY_LOWERBOUND_HPP_
