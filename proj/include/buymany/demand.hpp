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
// Buyer best response, revenue, and demand distributions for deterministic
// pricings. Tie-breaking is seller-favorable and deterministic: among sets
// within eps_tie of the maximum utility, highest price first, then smallest
// cardinality, then smallest bitset value.

#ifndef BUYMANY_DEMAND_HPP_
#define BUYMANY_DEMAND_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "buymany/lattice.hpp"
#include "buymany/rng.hpp"

namespace buymany {

struct DemandResult {
  Mask chosen_set = 0;
  double price_paid = 0.0;
  double utility = 0.0;  // always >= 0: the free empty set is available
};

enum class BestResponseMode {
  kAuto,        // structural shortcut for single-minded vs monotone pricings
  kExhaustive,  // always scan all 2^n sets (n <= kEnumMaxItems)
};

DemandResult best_response(const Valuation& v, const Pricing& p,
                           const ToleranceConfig& tol = {},
                           BestResponseMode mode = BestResponseMode::kAuto);

double revenue(const ValuationDistribution& d, const Pricing& p,
               const ToleranceConfig& tol = {});

// Distribution of the set a random buyer purchases.
class DemandDistribution {
 public:
  using Atom = std::pair<double, Mask>;  // (probability, set)

  static DemandDistribution explicit_support(ItemUniverse u,
                                             std::vector<Atom> atoms);
  static DemandDistribution product_marginals(ItemUniverse u,
                                              std::vector<double> pi);

  bool is_product() const { return product_; }
  const std::vector<Atom>& atoms() const;      // explicit form
  const std::vector<double>& marginals() const;  // product form
  const ItemUniverse& universe() const { return universe_; }
  int n() const { return universe_.n; }

  // Explicit expansion of a product form (requires n <= kTableMaxItems);
  // identity on explicit forms. Zero-probability sets are dropped.
  DemandDistribution expanded() const;

 private:
  explicit DemandDistribution(ItemUniverse u) : universe_(u) {}

  ItemUniverse universe_;
  bool product_ = false;
  std::vector<Atom> atoms_;
  std::vector<double> marginals_;
};

DemandDistribution demand_distribution(const Pricing& p,
                                       const ValuationDistribution& d,
                                       const ToleranceConfig& tol = {});

// The section-1 reduction: pick S from pi, value p(S) on every superset of S.
// mc_samples > 0 switches a product-form pi with more than kTableMaxItems
// relevant coordinates to seeded Monte Carlo expansion.
ValuationDistribution singleminded_from_demand(const DemandDistribution& pi,
                                               const Pricing& p,
                                               int mc_samples = 0,
                                               std::uint64_t seed = 0);

// Best response restricted to an explicit option list plus the free empty
// option (buy-one menu semantics, same tie rules). Used for raw option-list
// diagnostics where the closure is deliberately not applied.
DemandResult menu_best_response(const Valuation& v,
                                const std::vector<PricedSet>& options,
                                const ToleranceConfig& tol = {});

}  // namespace buymany

#endif  // BUYMANY_DEMAND_HPP_
