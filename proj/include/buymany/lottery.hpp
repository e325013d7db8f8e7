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
// Finite lottery menus: first-order stochastic dominance (Strassen coupling
// via max-flow feasibility), per-item price floors, exact adaptive
// acquisition costs, and expected utilities of floor-lottery multisets.

#ifndef BUYMANY_LOTTERY_HPP_
#define BUYMANY_LOTTERY_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "buymany/lattice.hpp"

namespace buymany {

class Lottery {
 public:
  using Outcome = std::pair<double, Mask>;  // (probability, set)

  Lottery(ItemUniverse u, std::vector<Outcome> outcomes);

  static Lottery point_mass(ItemUniverse u, Mask s) {
    return Lottery(u, {{1.0, s}});
  }

  const std::vector<Outcome>& outcomes() const { return outcomes_; }
  const ItemUniverse& universe() const { return universe_; }

  double prob_contains(int item) const;        // Pr[item in draw]
  double prob_disjoint(Mask a) const;          // Pr[draw and a disjoint]
  double expected_value(const Valuation& v) const;

 private:
  ItemUniverse universe_;
  std::vector<Outcome> outcomes_;
};

struct LotteryOption {
  Lottery lottery;
  double price = 0.0;
};

class LotteryMenu {
 public:
  LotteryMenu(ItemUniverse u, std::vector<LotteryOption> options);

  const std::vector<LotteryOption>& options() const { return options_; }
  const ItemUniverse& universe() const { return universe_; }
  int n() const { return universe_.n; }

  static LotteryMenu from_priced_sets(ItemUniverse u,
                                      const std::vector<PricedSet>& options);

 private:
  ItemUniverse universe_;
  std::vector<LotteryOption> options_;
};

// True iff a coupling exists under which the draw from `a` always contains
// the draw from `b` (first-order stochastic dominance). Decided by max-flow
// feasibility on the bipartite support graph with superset edges.
bool dominates(const Lottery& a, const Lottery& b);

struct ItemFloors {
  std::vector<double> floor;        // min over options of price/Pr[i in draw]
  std::vector<int> option_index;    // argmin option; -1 when unreachable
  std::vector<double> hit_prob;     // Pr[i in draw] of the argmin option
  bool all_finite = true;
};

ItemFloors lottery_item_floor(const LotteryMenu& menu);

// Exact minimum expected cost of acquiring every item of `target` by
// adaptively buying menu options. States are the subsets of `target` still
// needed; self-loops are eliminated in closed form, after which every
// transition strictly shrinks the state and one bottom-up pass is the
// converged fixed point.
double adaptive_acquisition_cost(const LotteryMenu& menu, Mask target);

struct MultisetUtility {
  double expected_value = 0.0;
  double total_price = 0.0;
  double utility = 0.0;  // expected_value - total_price
  std::vector<long long> copies;  // m_i per item of T (order of mask items)
};

// Expected utility of buying, for each i in T, ceil(m / Pr[i in lambda_i])
// independent copies of the floor-achieving lottery lambda_i. Exact for
// additive and single-minded valuations; other forms must use the Monte
// Carlo variant below.
MultisetUtility multiset_bundle_utility(const LotteryMenu& menu,
                                        const Valuation& v, Mask t, int m);

MultisetUtility multiset_bundle_utility_mc(const LotteryMenu& menu,
                                           const Valuation& v, Mask t, int m,
                                           int samples, std::uint64_t seed);

}  // namespace buymany

#endif  // BUYMANY_LOTTERY_HPP_
