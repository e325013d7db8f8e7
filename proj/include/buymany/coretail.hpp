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
// Core-tail split of a subadditive pricing under a product demand
// distribution: the concentration-based core bound, the tail item pricing,
// and the full decomposition report with its 22.67 ratio.

#ifndef BUYMANY_CORETAIL_HPP_
#define BUYMANY_CORETAIL_HPP_

#include <string>
#include <vector>

#include "buymany/demand.hpp"
#include "buymany/lattice.hpp"

namespace buymany {

enum class SplitRegime { kStandard, kTailOnly };

struct CoreTailSplit {
  // Items sorted by descending singleton price (ties by index).
  std::vector<int> order;
  int k = 0;  // number of tail items (prefix of `order`)
  Mask tail = 0;
  Mask core = 0;
  SplitRegime regime = SplitRegime::kStandard;
};

// Find the index k with pi_(1)+..+pi_(k) < 1/2 <= pi_(1)+..+pi_(k+1) in the
// sorted order; tail-only when the marginals never reach 1/2 in total.
CoreTailSplit split_core_tail(const Pricing& p, const DemandDistribution& pi);

struct CoreStats {
  double a = 0.0;          // upper median: inf{t : Pr[p(S_CORE) > t] < 1/2}
  double c = 0.0;          // Lipschitz constant p({k+1})
  double core_mean = 0.0;  // E[p(S_CORE)], exact
  double bound = 0.0;      // 3a + (4/ln 2) c
};

// Standard regime only; exact enumeration over the core coordinates.
CoreStats core_stats(const Pricing& p, const DemandDistribution& pi,
                     const CoreTailSplit& split);

// Items 1..k at their singleton prices, the rest free.
Pricing tail_pricing(const Pricing& p, const CoreTailSplit& split);

struct DecompositionReport {
  SplitRegime regime = SplitRegime::kStandard;
  int k = 0;
  double rev = 0.0;      // E[p(S)]
  double e_tail = 0.0;   // E[p(S_TAIL)]
  double e_core = 0.0;   // E[p(S_CORE)]
  double a = 0.0;
  double c = 0.0;
  double brev = 0.0;          // exact BRev of the induced distribution
  double tail_srev = 0.0;     // revenue of the tail item pricing
  double rev_bundle_a = 0.0;  // revenue of BundlePricing(a)
  double rev_bundle_c = 0.0;  // revenue of BundlePricing(c)
  double ratio = 0.0;         // rev / max(tail_srev, brev)
};

// Full Appendix-style chain against D = singleminded_from_demand(pi, p):
//   (i)  E[p(S_CORE)] <= (6 + 4/((1-e^{-1/2}) ln 2)) * BRev
//   (ii) E[p(S_TAIL)] <= 2 * Rev(tail_pricing)
//   (iii) Rev <= 22.67 * max(Rev(tail_pricing), BRev)
// plus the witness steps Rev(bundle a) >= a/2 and
// Rev(bundle c) >= c (1 - e^{-1/2}) and the concentration bound
// E[p(S_CORE)] <= 3a + (4/ln 2) c. Tail-only regime asserts (ii)-(iii) with
// zero core terms. Violations beyond eps_report throw assertion errors.
DecompositionReport decomposition_report(const Pricing& p,
                                         const DemandDistribution& pi,
                                         const ToleranceConfig& tol = {});

}  // namespace buymany

#endif  // BUYMANY_CORETAIL_HPP_
