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

#include "buymany/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace buymany {
namespace {

// Argmax of v(S) - alpha*q(S) at a fixed alpha with the seller-favorable tie
// order (price under alpha*q descends with q(S), then cardinality, mask).
Mask argmax_at(const std::vector<double>& values,
               const std::vector<double>& prices, double alpha,
               double eps_tie) {
  double best = 0.0;
  const std::size_t size = values.size();
  for (Mask s = 0; s < size; ++s) {
    double u = values[s] - alpha * prices[s];
    if (u > best) best = u;
  }
  Mask arg = 0;
  bool have = false;
  for (Mask s = 0; s < size; ++s) {
    double u = values[s] - alpha * prices[s];
    if (u + eps_tie < best) continue;
    if (!have || prices[s] > prices[arg] ||
        (prices[s] == prices[arg] &&
         (popcount(s) < popcount(arg) ||
          (popcount(s) == popcount(arg) && s < arg)))) {
      arg = s;
      have = true;
    }
  }
  return arg;
}

double utility_at(const std::vector<double>& values,
                  const std::vector<double>& prices, double alpha) {
  double best = 0.0;
  for (Mask s = 0; s < values.size(); ++s) {
    best = std::max(best, values[s] - alpha * prices[s]);
  }
  return best;
}

}  // namespace

ScaleDistribution::ScaleDistribution(double l, double h) : lo(l), hi(h) {
  require(std::isfinite(l) && l > 0.0, "scale distribution needs l > 0");
  require(std::isfinite(h) && h >= l, "scale distribution needs h >= l");
}

double sample_alpha(const ScaleDistribution& sd, Rng& rng) {
  if (sd.lo == sd.hi) return sd.lo;
  return sd.lo * std::pow(sd.hi / sd.lo, rng.uniform01());
}

double sample_alpha(const ScaleDistribution& sd, std::uint64_t seed) {
  Rng rng(seed);
  return sample_alpha(sd, rng);
}

ScaledRevenueResult expected_scaled_revenue(const Valuation& v,
                                            const Pricing& q,
                                            const ScaleDistribution& sd,
                                            const ToleranceConfig& tol) {
  tol.validate();
  require(v.universe() == q.universe(),
          "valuation and pricing must share one universe");
  require(v.n() <= 12, "expected_scaled_revenue enumerates 2^n utility "
                       "lines and their pairwise intersections; n <= 12");
  std::vector<double> values = value_table(v);
  std::vector<double> prices = price_table(q);
  for (double x : prices) {
    require(std::isfinite(x), "expected_scaled_revenue needs a finite pricing");
  }

  ScaledRevenueResult out;
  out.u_lo = utility_at(values, prices, sd.lo);
  out.u_hi = utility_at(values, prices, sd.hi);
  if (sd.lo == sd.hi) {
    Mask arg = argmax_at(values, prices, sd.lo, tol.eps_tie);
    out.value = sd.lo * prices[arg];
    out.profile.intervals.push_back({sd.lo, sd.hi, arg});
    return out;
  }

  // Candidate breakpoints: pairwise intersections of the utility lines
  // restricted to [lo, hi], deduplicated with eps_tie.
  std::vector<double> cuts;
  cuts.push_back(sd.lo);
  cuts.push_back(sd.hi);
  const std::size_t size = values.size();
  for (Mask s = 0; s < size; ++s) {
    for (Mask t = s + 1; t < size; ++t) {
      double dq = prices[s] - prices[t];
      if (dq == 0.0) continue;
      double alpha = (values[s] - values[t]) / dq;
      if (alpha > sd.lo && alpha < sd.hi) cuts.push_back(alpha);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [&](double a, double b) {
                           return std::abs(a - b) <= tol.eps_tie;
                         }),
             cuts.end());
  if (cuts.back() < sd.hi) cuts.push_back(sd.hi);

  const double log_span = std::log(sd.hi / sd.lo);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double a = cuts[i], b = cuts[i + 1];
    Mask arg = argmax_at(values, prices, 0.5 * (a + b), tol.eps_tie);
    total += prices[arg] * (b - a);
    if (!out.profile.intervals.empty() &&
        out.profile.intervals.back().chosen_set == arg) {
      out.profile.intervals.back().alpha_end = b;
    } else {
      out.profile.intervals.push_back({a, b, arg});
    }
  }
  out.value = total / log_span;
  return out;
}

double pointwise_factor(const Pricing& p, const Pricing& q,
                        const ToleranceConfig& tol) {
  tol.validate();
  require(p.universe() == q.universe(), "pricings must share one universe");
  require(p.n() <= kEnumMaxItems, "pointwise_factor scans all 2^n sets");
  const std::size_t size = std::size_t{1} << p.n();
  double c = 1.0;
  for (Mask s = 0; s < size; ++s) {
    double ps = p.price(s);
    double qs = q.price(s);
    require(std::isfinite(ps) && std::isfinite(qs),
            "pointwise_factor needs finite pricings");
    if (ps > qs + tol.eps_price) {
      throw Error(ErrorKind::kValidation,
                  "pointwise_factor: p exceeds q at set " + std::to_string(s));
    }
    if (ps == 0.0 && qs == 0.0) continue;
    if (ps == 0.0) return kInf;
    c = std::max(c, qs / ps);
  }
  return c;
}

Theorem3Report theorem3_check(const Pricing& p, const ValuationDistribution& d,
                              const ToleranceConfig& tol) {
  tol.validate();
  CheckReport check = check_deterministic_sybil_proof(p, tol);
  require(check.sybil_proof() && !check.partial,
          "theorem3_check requires a finite monotone subadditive pricing");
  Pricing q = additive_extension(p);
  double c = pointwise_factor(p, q, tol);
  if (!std::isfinite(c)) {
    throw Error(ErrorKind::kValidation,
                "theorem3_check: point-wise factor is infinite");
  }
  Theorem3Report report;
  report.c = c;
  report.lo = 1.0 / (2.0 * c);
  report.hi = 1.0;
  ScaleDistribution sd(report.lo, report.hi);
  const double denom = 2.0 * std::log(2.0 * c);
  int index = 0;
  for (const auto& [w, v] : d.support()) {
    ScaledRevenueResult e = expected_scaled_revenue(v, q, sd, tol);
    double rev_p = best_response(v, p, tol).price_paid;
    ScalingMargin m;
    m.type_index = index++;
    m.expected_scaled = e.value;
    m.target = rev_p / denom;
    m.margin = m.expected_scaled - m.target;
    if (m.margin < -tol.eps_report) {
      throw Error(ErrorKind::kAssertion,
                  "scaled-revenue bound violated for support type " +
                      std::to_string(m.type_index) + ": margin " +
                      std::to_string(m.margin));
    }
    report.per_type.push_back(m);
  }
  return report;
}

Pricing gt_pricing(const std::vector<double>& q_items, Mask t, int a,
                   ItemUniverse u) {
  require(a >= 0, "gt_pricing needs a >= 0");
  require(q_items.size() == static_cast<std::size_t>(u.n),
          "gt_pricing needs one base price per item");
  double qt = 0.0;
  for (int i : mask_to_items(t)) qt += q_items[i];
  return Pricing::uniform_item(u, std::ldexp(qt, a + u.n));
}

CombinedBoundReport combined_bound_check(const Pricing& p,
                                         const ValuationDistribution& d,
                                         int a_max,
                                         const ToleranceConfig& tol) {
  tol.validate();
  const int n = p.n();
  require(n <= 10, "combined_bound_check enumerates 2^n uniform pricings per "
                   "exponent; n <= 10");
  require(a_max >= 0, "a_max must be >= 0");
  CheckReport check = check_deterministic_sybil_proof(p, tol);
  require(check.sybil_proof() && !check.partial,
          "combined_bound_check requires a finite monotone subadditive "
          "pricing");
  Pricing q = additive_extension(p);
  const std::vector<double>& q_items = q.item_prices();

  CombinedBoundReport report;
  report.lo = 1.0 / (2.0 * n);
  report.hi = 4.0 * n;
  ScaleDistribution sd(report.lo, report.hi);
  const double log_factor = std::log(8.0 * n * n);

  const std::size_t ntypes = d.support().size();
  std::vector<double> e_g(ntypes, 0.0);
  int a = 0;
  for (;; ++a) {
    if (a > a_max) {
      throw Error(ErrorKind::kValidation,
                  "combined_bound_check: geometric truncation not reached "
                  "within a_max = " +
                      std::to_string(a_max) + "; increase a_max");
    }
    double weight_a = std::ldexp(1.0, -a - 1);  // Pr[a = x] = 2^{-x-1}
    double layer_total = 0.0;
    std::vector<double> layer(ntypes, 0.0);
    for (Mask t = 0; t < (Mask{1} << n); ++t) {
      Pricing g = gt_pricing(q_items, t, a, p.universe());
      for (std::size_t k = 0; k < ntypes; ++k) {
        double paid = best_response(d.support()[k].second, g, tol).price_paid;
        layer[k] += paid;
        layer_total += paid;
      }
    }
    if (layer_total == 0.0) break;  // every buyer pays nothing from here on
    double t_weight = std::ldexp(1.0, -n);  // uniform T over 2^[n]
    for (std::size_t k = 0; k < ntypes; ++k) {
      e_g[k] += weight_a * t_weight * layer[k];
    }
  }
  report.truncation_exponent = a;

  int index = 0;
  for (const auto& [w, v] : d.support()) {
    ScaledRevenueResult e = expected_scaled_revenue(v, q, sd, tol);
    double rev_p = best_response(v, p, tol).price_paid;
    ScalingMargin m;
    m.type_index = index;
    m.expected_scaled = e.value;
    m.extra = 4.0 * e_g[index];
    m.target = 0.5 * rev_p;
    m.margin = log_factor * m.expected_scaled + m.extra - m.target;
    if (m.margin < -tol.eps_report) {
      throw Error(ErrorKind::kAssertion,
                  "combined bound violated for support type " +
                      std::to_string(index) + ": margin " +
                      std::to_string(m.margin));
    }
    report.per_type.push_back(m);
    ++index;
  }
  return report;
}

}  // namespace buymany
