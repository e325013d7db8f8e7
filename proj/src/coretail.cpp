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

#include "buymany/coretail.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "buymany/simple_opt.hpp"

namespace buymany {
namespace {

// Expectation of f(S ∩ scope) for S ~ product(pi): enumerate the scope's
// coordinates only.
template <typename Fn>
double scoped_expectation(const std::vector<double>& pi, Mask scope, Fn&& f) {
  std::vector<int> items = mask_to_items(scope);
  const int k = static_cast<int>(items.size());
  double total = 0.0;
  for (Mask s = 0; s < (Mask{1} << k); ++s) {
    double w = 1.0;
    Mask real = 0;
    for (int j = 0; j < k; ++j) {
      if (s & (Mask{1} << j)) {
        w *= pi[items[j]];
        real |= Mask{1} << items[j];
      } else {
        w *= 1.0 - pi[items[j]];
      }
    }
    if (w > 0.0) total += w * f(real);
  }
  return total;
}

// lhs <= rhs + slack, else an assertion error (CLI exit 3).
void assert_le(double lhs, double rhs, double slack, const std::string& what) {
  if (lhs > rhs + slack) {
    throw Error(ErrorKind::kAssertion,
                what + " violated: " + std::to_string(lhs) + " > " +
                    std::to_string(rhs));
  }
}

}  // namespace

CoreTailSplit split_core_tail(const Pricing& p, const DemandDistribution& pi) {
  require(pi.is_product(), "core-tail split needs a product demand "
                           "distribution");
  require(p.universe() == pi.universe(), "shared universe required");
  const int n = p.n();
  const auto& marginals = pi.marginals();

  CoreTailSplit split;
  split.order.resize(n);
  std::iota(split.order.begin(), split.order.end(), 0);
  std::vector<double> singleton(n);
  for (int i = 0; i < n; ++i) singleton[i] = p.price(Mask{1} << i);
  std::stable_sort(split.order.begin(), split.order.end(),
                   [&](int a, int b) { return singleton[a] > singleton[b]; });

  double cumulative = 0.0;
  int k = n;
  for (int pos = 0; pos < n; ++pos) {
    if (cumulative + marginals[split.order[pos]] >= 0.5) {
      k = pos;  // pi_(1)+..+pi_(k) < 1/2 <= pi_(1)+..+pi_(k+1)
      break;
    }
    cumulative += marginals[split.order[pos]];
  }
  if (k == n) {
    split.regime = SplitRegime::kTailOnly;
    split.k = n;
    split.tail = p.universe().full_mask();
    split.core = 0;
  } else {
    split.regime = SplitRegime::kStandard;
    split.k = k;
    for (int pos = 0; pos < k; ++pos) split.tail |= Mask{1} << split.order[pos];
    split.core = p.universe().full_mask() & ~split.tail;
  }
  return split;
}

CoreStats core_stats(const Pricing& p, const DemandDistribution& pi,
                     const CoreTailSplit& split) {
  if (split.regime == SplitRegime::kTailOnly) {
    throw Error(ErrorKind::kValidation,
                "core_stats: tail-only regime has no core; use the tail-only "
                "path of decomposition_report");
  }
  require(popcount(split.core) <= kTableMaxItems,
          "core_stats enumerates the core coordinates exactly; |core| <= 20");
  const auto& marginals = pi.marginals();

  CoreStats stats;
  stats.c = p.price(Mask{1} << split.order[split.k]);

  // Distribution of p(S_CORE) over the core coordinates.
  std::vector<std::pair<double, double>> dist;  // (value, probability)
  std::vector<int> items = mask_to_items(split.core);
  const int kcore = static_cast<int>(items.size());
  dist.reserve(std::size_t{1} << kcore);
  double mean = 0.0;
  for (Mask s = 0; s < (Mask{1} << kcore); ++s) {
    double w = 1.0;
    Mask real = 0;
    for (int j = 0; j < kcore; ++j) {
      if (s & (Mask{1} << j)) {
        w *= marginals[items[j]];
        real |= Mask{1} << items[j];
      } else {
        w *= 1.0 - marginals[items[j]];
      }
    }
    if (w <= 0.0) continue;
    double value = p.price(real);
    dist.emplace_back(value, w);
    mean += w * value;
  }
  stats.core_mean = mean;

  // Upper median: smallest support value t with Pr[p(S_CORE) > t] < 1/2.
  std::sort(dist.begin(), dist.end());
  double above = 1.0;
  stats.a = dist.back().first;
  for (std::size_t i = 0; i < dist.size();) {
    std::size_t j = i;
    double mass = 0.0;
    while (j < dist.size() && dist[j].first == dist[i].first) {
      mass += dist[j].second;
      ++j;
    }
    above -= mass;
    if (above < 0.5) {
      stats.a = dist[i].first;
      break;
    }
    i = j;
  }
  stats.bound = 3.0 * stats.a + (4.0 / std::log(2.0)) * stats.c;
  return stats;
}

Pricing tail_pricing(const Pricing& p, const CoreTailSplit& split) {
  std::vector<double> q(p.n(), 0.0);
  for (int pos = 0; pos < split.k; ++pos) {
    int item = split.order[pos];
    q[item] = p.price(Mask{1} << item);
  }
  return Pricing::item(p.universe(), std::move(q));
}

DecompositionReport decomposition_report(const Pricing& p,
                                         const DemandDistribution& pi,
                                         const ToleranceConfig& tol) {
  tol.validate();
  require(p.n() <= 13, "decomposition_report verifies subadditivity (n <= 13)");
  CheckReport check = check_deterministic_sybil_proof(p, tol);
  require(check.sybil_proof() && !check.partial,
          "decomposition_report needs a finite monotone subadditive pricing");
  CoreTailSplit split = split_core_tail(p, pi);
  const auto& marginals = pi.marginals();

  DecompositionReport report;
  report.regime = split.regime;
  report.k = split.k;
  report.rev = scoped_expectation(marginals, p.universe().full_mask(),
                                  [&](Mask s) { return p.price(s); });
  report.e_tail = scoped_expectation(marginals, split.tail,
                                     [&](Mask s) { return p.price(s); });
  report.e_core =
      split.core == 0
          ? 0.0
          : scoped_expectation(marginals, split.core,
                               [&](Mask s) { return p.price(s); });

  ValuationDistribution induced = singleminded_from_demand(pi, p);
  Pricing tail_q = tail_pricing(p, split);
  report.tail_srev = revenue(induced, tail_q, tol);
  report.brev = brev_exact(induced, tol).value;

  const double scale = std::max(1.0, report.rev);
  if (split.regime == SplitRegime::kStandard) {
    CoreStats stats = core_stats(p, pi, split);
    report.a = stats.a;
    report.c = stats.c;
    report.rev_bundle_a =
        stats.a > 0.0
            ? revenue(induced, Pricing::bundle(p.universe(), stats.a), tol)
            : 0.0;
    report.rev_bundle_c =
        stats.c > 0.0
            ? revenue(induced, Pricing::bundle(p.universe(), stats.c), tol)
            : 0.0;

    // Witness steps from the proof.
    const double slack = tol.eps_report * scale;
    assert_le(stats.a / 2.0, report.rev_bundle_a, slack,
              "bundle-at-median revenue >= a/2");
    assert_le(stats.c * (1.0 - std::exp(-0.5)), report.rev_bundle_c, slack,
              "bundle-at-c revenue >= c(1-e^{-1/2})");
    assert_le(report.e_core, stats.bound, slack,
              "concentration bound 3a + 4c/ln2");
    // (i): core expectation against exact BRev.
    const double core_const = 6.0 + 4.0 / ((1.0 - std::exp(-0.5)) *
                                           std::log(2.0));
    assert_le(report.e_core, core_const * report.brev, slack,
              "(i) core bound via BRev");
  }
  // (ii): tail expectation against the tail item pricing.
  assert_le(report.e_tail, 2.0 * report.tail_srev, tol.eps_report * scale,
            "(ii) tail bound via item pricing");
  // (iii): the headline ratio.
  double best_simple = std::max(report.tail_srev, report.brev);
  assert_le(report.rev, 22.67 * best_simple, tol.eps_report * scale,
            "(iii) 22.67 decomposition ratio");
  report.ratio = best_simple > 0.0 ? report.rev / best_simple : 0.0;
  return report;
}

}  // namespace buymany
