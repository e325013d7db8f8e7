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
// Scaled-pricing revenue machinery: the equal-revenue scaling distribution,
// exact expected revenue under random scalings via breakpoint integration,
// the point-wise sandwich factor, uniform item pricings g_{T,a}, and the
// combined two-family bound. Natural log throughout: the scaling density
// 1/(alpha ln(h/l)) integrates to 1 only in base e, and every log-factor
// below is taken in the same base.

#ifndef BUYMANY_SCALING_HPP_
#define BUYMANY_SCALING_HPP_

#include <cstdint>
#include <vector>

#include "buymany/demand.hpp"
#include "buymany/lattice.hpp"

namespace buymany {

struct ScaleDistribution {
  double lo = 0.0;  // l > 0
  double hi = 0.0;  // h >= l

  ScaleDistribution(double l, double h);
};

// Draw alpha = l*(h/l)^u with u ~ U[0,1): inverse CDF of the density
// 1/(alpha ln(h/l)) on [l, h].
double sample_alpha(const ScaleDistribution& sd, std::uint64_t seed);
double sample_alpha(const ScaleDistribution& sd, Rng& rng);

struct BreakpointInterval {
  double alpha_start = 0.0;
  double alpha_end = 0.0;
  Mask chosen_set = 0;
};

// Within each interval the buyer's best response against alpha*q is constant.
struct BreakpointProfile {
  std::vector<BreakpointInterval> intervals;
};

struct ScaledRevenueResult {
  double value = 0.0;   // E_alpha[Rev_v(alpha q)], exact
  double u_lo = 0.0;    // u(v, l*q)
  double u_hi = 0.0;    // u(v, h*q)
  BreakpointProfile profile;
};

// Exact expectation by upper-envelope integration of the utility lines
// alpha -> v(S) - alpha*q(S): candidate breakpoints at all pairwise line
// intersections, argmax sampled at interval midpoints, then
// value = sum_I q(S_I)*(end - start)/ln(h/l). Equals
// (u(v,l q) - u(v,h q))/ln(h/l) for deterministic pricings.
ScaledRevenueResult expected_scaled_revenue(const Valuation& v,
                                            const Pricing& q,
                                            const ScaleDistribution& sd,
                                            const ToleranceConfig& tol = {});

// Smallest c with q(S)/c <= p(S) <= q(S) on every set. Throws (with a witness
// set) if p exceeds q anywhere; returns +infinity when p(S)=0 < q(S).
double pointwise_factor(const Pricing& p, const Pricing& q,
                        const ToleranceConfig& tol = {});

struct ScalingMargin {
  int type_index = 0;
  double expected_scaled = 0.0;  // E_alpha[Rev_v(alpha q)]
  double target = 0.0;           // Rev_v(p) / (2 ln(2c))  (or p(v)/2 below)
  double margin = 0.0;
  double extra = 0.0;  // combined bound only: 4*E_{T,a}[Rev_v(g_{T,a})]
};

struct Theorem3Report {
  double c = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<ScalingMargin> per_type;
};

// Checks E_alpha[Rev_v(alpha q)] >= Rev_v(p)/(2 ln(2c)) for every support
// type, with q the additive extension of p, c the point-wise factor,
// alpha ~ [1/(2c), 1]. Throws an assertion error if any margin drops below
// -eps_report; requires p monotone subadditive.
Theorem3Report theorem3_check(const Pricing& p, const ValuationDistribution& d,
                              const ToleranceConfig& tol = {});

// The uniform item pricing S -> 2^(a+n) * q(T) * |S|.
Pricing gt_pricing(const std::vector<double>& q_items, Mask t, int a,
                   ItemUniverse u);

struct CombinedBoundReport {
  double lo = 0.0;
  double hi = 0.0;
  int truncation_exponent = 0;  // first a with zero revenue for every type
  std::vector<ScalingMargin> per_type;
};

// ln(8n^2)*E_alpha[Rev_v(alpha q)] + 4*E_{T,a}[Rev_v(g_{T,a})] >= p(v)/2 per
// support type, with T uniform over 2^[n], Pr[a=x] = 2^{-x-1}, l = 1/(2n),
// h = 4n. The geometric tail in a is truncated exactly at the first exponent
// where every buyer pays nothing. Throws an assertion error on violation;
// errors (validation) if truncation is not reached within a_max.
CombinedBoundReport combined_bound_check(const Pricing& p,
                                         const ValuationDistribution& d,
                                         int a_max,
                                         const ToleranceConfig& tol = {});

}  // namespace buymany

#endif  // BUYMANY_SCALING_HPP_
