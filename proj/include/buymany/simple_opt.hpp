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
// Exact optimal simple pricings: BRev by candidate enumeration, SRev by
// serve-set enumeration plus a dense simplex LP for single-minded supports,
// and a coordinate-ascent grid heuristic for everything else.

#ifndef BUYMANY_SIMPLE_OPT_HPP_
#define BUYMANY_SIMPLE_OPT_HPP_

#include <cstdint>
#include <vector>

#include "buymany/demand.hpp"
#include "buymany/lattice.hpp"

namespace buymany {

struct SimpleOptResult {
  Pricing best_pricing;
  double value = 0.0;
  bool exact = false;
};

// Optimal bundle pricing. The optimal constant price lies among the support
// values of v([n]); ties break to the lowest price.
SimpleOptResult brev_exact(const ValuationDistribution& d,
                           const ToleranceConfig& tol = {});

// Optimal item pricing for single-minded supports of size <= 14: enumerate
// every served subset A of the support, solve
//   max sum_{j in A} w_j q(S_j)  s.t.  q(S_j) <= value_j (j in A), q >= 0
// and take the best serve set.
SimpleOptResult srev_exact_singleminded(const ValuationDistribution& d,
                                        const ToleranceConfig& tol = {});

// Heuristic lower bound on SRev for arbitrary finite supports: coordinate
// ascent over a grid of observed value levels with seeded random restarts.
// Deterministic for a fixed seed regardless of thread count.
SimpleOptResult srev_grid(const ValuationDistribution& d, int levels_per_item,
                          std::uint64_t seed, const ToleranceConfig& tol = {});

// Dense primal simplex for max c.x s.t. A x <= b, x >= 0 with b >= 0 (the
// all-slack basis is feasible). Bland's rule; sizes here are tiny.
struct LpResult {
  double objective = 0.0;
  std::vector<double> x;
};
LpResult solve_lp_max(const std::vector<double>& c,
                      const std::vector<std::vector<double>>& a,
                      const std::vector<double>& b);

}  // namespace buymany

#endif  // BUYMANY_SIMPLE_OPT_HPP_
