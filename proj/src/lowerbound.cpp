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

#include "buymany/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "buymany/rng.hpp"

namespace buymany {
namespace {

// Additive extension completed to finite singleton prices: ground elements
// covered by no base set get the maximum finite singleton price. Such items
// occur in no valuation and no demand-support set of the generated
// instances, so revenues and ratios are unaffected by the fill value.
Pricing extension_with_completion(const Pricing& p, ItemUniverse u) {
  std::vector<double> q(u.n);
  double max_finite = 0.0;
  bool any_infinite = false;
  for (int i = 0; i < u.n; ++i) {
    q[i] = p.price(Mask{1} << i);
    if (std::isfinite(q[i])) {
      max_finite = std::max(max_finite, q[i]);
    } else {
      any_infinite = true;
    }
  }
  if (any_infinite) {
    for (double& x : q) {
      if (!std::isfinite(x)) x = max_finite;
    }
  }
  return Pricing::item(u, std::move(q));
}

}  // namespace

void SetSystemParams::validate() const {
  require(n >= 1 && n <= kMaxItems, "ground size out of range");
  require(num_sets >= 1, "need N >= 1");
  require(set_size >= 1 && set_size <= n, "need 1 <= d <= n");
  require(max_overlap >= 0 && max_overlap < set_size, "need 0 <= t < d");
  require(max_tries >= 1, "need a positive rejection budget");
}

std::vector<Mask> gen_set_system(const SetSystemParams& params,
                                 std::uint64_t seed) {
  params.validate();
  Rng rng(seed);
  std::vector<Mask> sets;
  sets.reserve(params.num_sets);
  for (int tries = 0; tries < params.max_tries; ++tries) {
    Mask cand = rng.subset(params.n, params.set_size);
    bool ok = true;
    for (Mask s : sets) {
      if (popcount(s & cand) > params.max_overlap) {
        ok = false;
        break;
      }
    }
    if (ok) {
      sets.push_back(cand);
      if (static_cast<int>(sets.size()) == params.num_sets) return sets;
    }
  }
  throw Error(ErrorKind::kValidation,
              "gen_set_system: placed only " + std::to_string(sets.size()) +
                  " of " + std::to_string(params.num_sets) +
                  " sets within the rejection budget (parameters likely "
                  "infeasible)");
}

BetaVector sample_beta(int num_sets, int m, int b_min, std::uint64_t seed) {
  require(num_sets >= 1, "need N >= 1");
  require(m >= 1, "need m >= 1");
  require(b_min >= 1, "need b_min >= 1");
  Rng rng(seed);
  BetaVector beta;
  beta.b_min = b_min;
  beta.m = m;
  beta.values.reserve(num_sets);
  const double z = 1.0 - std::ldexp(1.0, -m);
  for (int i = 0; i < num_sets; ++i) {
    double u = rng.uniform01() * z;
    double acc = 0.0;
    int k = m;
    for (int kk = 1; kk <= m; ++kk) {
      acc += std::ldexp(1.0, -kk);
      if (u < acc) {
        k = kk;
        break;
      }
    }
    beta.values.push_back((1LL << k) * b_min);
  }
  return beta;
}

void MatroidSpec::validate() const {
  require(!sets.empty() && sets.size() <= 6,
          "matroid oracle budget: 1 <= N <= 6");
  require(universe.n <= 14, "matroid oracle budget: ground <= 14");
  require(tau >= 2 && tau <= 4, "matroid oracle budget: 2 <= tau <= 4");
  require(beta.size() == sets.size(), "need one b per set");
  long long max_b = 0;
  for (long long b : beta) {
    require(b >= 0, "b values must be >= 0");
    max_b = std::max(max_b, b);
  }
  require(mu >= max_b, "need mu >= max b_i");
  for (Mask s : sets) {
    require(is_subset(s, universe.full_mask()), "set exceeds the universe");
  }
}

long long coverage_h(const MatroidSpec& spec, std::uint32_t j_mask) {
  long long sum_b = 0;
  Mask union_s = 0;
  int count = 0;
  for (std::size_t j = 0; j < spec.sets.size(); ++j) {
    if (j_mask & (std::uint32_t{1} << j)) {
      sum_b += spec.beta[j];
      union_s |= spec.sets[j];
      ++count;
    }
  }
  return sum_b - (spec.mu * count - popcount(union_s));
}

bool matroid_independent(const MatroidSpec& spec, Mask set) {
  if (popcount(set) > spec.mu) return false;
  const std::uint32_t nsub = std::uint32_t{1} << spec.sets.size();
  for (std::uint32_t j = 0; j < nsub; ++j) {
    if (std::popcount(j) >= spec.tau) continue;
    Mask union_s = 0;
    for (std::size_t k = 0; k < spec.sets.size(); ++k) {
      if (j & (std::uint32_t{1} << k)) union_s |= spec.sets[k];
    }
    if (popcount(set & union_s) > coverage_h(spec, j)) return false;
  }
  return true;
}

int matroid_rank(const MatroidSpec& spec, Mask set) {
  spec.validate();
  Mask independent = 0;
  for (int i : mask_to_items(set)) {
    Mask cand = independent | (Mask{1} << i);
    if (matroid_independent(spec, cand)) independent = cand;
  }
  return popcount(independent);
}

bool check_mu_tau_large(const MatroidSpec& spec) {
  spec.validate();
  const std::uint32_t nsub = std::uint32_t{1} << spec.sets.size();
  for (std::uint32_t j = 0; j < nsub; ++j) {
    int size = std::popcount(j);
    long long h = coverage_h(spec, j);
    if (size < spec.tau && h < 0) return false;
    if (size >= spec.tau && size <= 2 * spec.tau - 2 && h < spec.mu) {
      return false;
    }
  }
  return true;
}

LowerBoundInstance build_singleminded_instance(
    const std::vector<Mask>& sets, const BetaVector& beta, ItemUniverse u,
    CompletionMode mode, const std::optional<MatroidSpec>& matroid_spec,
    const ToleranceConfig& tol) {
  require(!sets.empty() && sets.size() == beta.values.size(),
          "sets and beta must align and be nonempty");
  const int num_sets = static_cast<int>(sets.size());

  Pricing completion = Pricing::bundle(u, 0.0);  // replaced below
  if (mode == CompletionMode::kCover) {
    std::vector<PricedSet> options;
    options.reserve(num_sets);
    for (int i = 0; i < num_sets; ++i) {
      options.push_back({sets[i], static_cast<double>(beta.values[i])});
    }
    Pricing closure = Pricing::cover(u, options);
    for (int i = 0; i < num_sets; ++i) {
      double got = closure.price(sets[i]);
      if (got < static_cast<double>(beta.values[i])) {
        throw Error(ErrorKind::kValidation,
                    "build_singleminded_instance: cover completion undercuts "
                    "b_" + std::to_string(i) + " (" + std::to_string(got) +
                        " < " + std::to_string(beta.values[i]) +
                        "); resample beta");
      }
    }
    completion = closure;
  } else {
    require(matroid_spec.has_value(), "matroid mode needs a MatroidSpec");
    const MatroidSpec& spec = *matroid_spec;
    spec.validate();
    require(spec.sets == sets, "matroid spec must carry the same sets");
    if (!check_mu_tau_large(spec)) {
      throw Error(ErrorKind::kValidation,
                  "build_singleminded_instance: coverage function is not "
                  "(mu,tau)-large");
    }
    for (int i = 0; i < num_sets; ++i) {
      if (beta.values[i] > popcount(sets[i])) {
        throw Error(ErrorKind::kValidation,
                    "build_singleminded_instance: b_" + std::to_string(i) +
                        " exceeds |S_i|, not realizable as a rank");
      }
    }
    std::vector<double> table(u.table_size());
    for (Mask s = 0; s < u.table_size(); ++s) {
      table[s] = static_cast<double>(matroid_rank(spec, s));
    }
    for (int i = 0; i < num_sets; ++i) {
      if (table[sets[i]] != static_cast<double>(beta.values[i])) {
        throw Error(ErrorKind::kValidation,
                    "build_singleminded_instance: rank(S_" +
                        std::to_string(i) + ") != b_" + std::to_string(i));
      }
    }
    completion = Pricing::explicit_table(u, std::move(table));
  }
  Pricing p = Pricing::scaled(0.5, completion);

  std::vector<ValuationDistribution::Entry> support;
  std::map<Mask, double> pi_acc;
  double sum_b = 0.0;
  for (int i = 0; i < num_sets; ++i) {
    support.emplace_back(
        1.0 / num_sets,
        Valuation::single_minded(u, sets[i],
                                 static_cast<double>(beta.values[i])));
    pi_acc[sets[i]] += 1.0 / num_sets;
    sum_b += static_cast<double>(beta.values[i]);
  }
  std::vector<DemandDistribution::Atom> atoms;
  for (const auto& [s, w] : pi_acc) atoms.emplace_back(w, s);

  LowerBoundInstance inst{
      ValuationDistribution(u, std::move(support)), p,
      DemandDistribution::explicit_support(u, std::move(atoms)),
      mode, sum_b / (2.0 * num_sets)};

  double rev = revenue(inst.d, inst.p, tol);
  if (std::abs(rev - inst.expected_revenue) >
      1e-9 * std::max(1.0, inst.expected_revenue)) {
    throw Error(ErrorKind::kAssertion,
                "build_singleminded_instance: revenue identity violated: " +
                    std::to_string(rev) + " vs " +
                    std::to_string(inst.expected_revenue));
  }
  return inst;
}

LowerBoundInstance build_additive_instance(const std::vector<Mask>& sets,
                                           const BetaVector& beta,
                                           ItemUniverse u,
                                           const ToleranceConfig& tol) {
  require(!sets.empty() && sets.size() == beta.values.size(),
          "sets and beta must align and be nonempty");
  const int num_sets = static_cast<int>(sets.size());
  const int d = popcount(sets[0]);
  for (Mask s : sets) {
    require(popcount(s) == d, "additive instance needs equal-size sets");
  }
  // No-arbitrage: t * b_max / d <= b_min / 2 with the nominal value bounds;
  // makes buying any collection of other sets worthless for every type.
  const long long b_max = beta.b_max_nominal();
  for (int i = 0; i < num_sets; ++i) {
    for (int j = i + 1; j < num_sets; ++j) {
      int overlap = popcount(sets[i] & sets[j]);
      if (static_cast<double>(overlap) * b_max / d >
          static_cast<double>(beta.b_min) / 2.0) {
        throw Error(ErrorKind::kValidation,
                    "build_additive_instance: no-arbitrage fails for pair (" +
                        std::to_string(i) + "," + std::to_string(j) +
                        "): overlap " + std::to_string(overlap));
      }
    }
  }

  std::vector<PricedSet> options;
  options.reserve(num_sets);
  for (int i = 0; i < num_sets; ++i) {
    options.push_back({sets[i], static_cast<double>(beta.values[i]) / 2.0});
  }
  Pricing p = Pricing::cover(u, options);

  std::vector<ValuationDistribution::Entry> support;
  std::map<Mask, double> pi_acc;
  double sum_half_b = 0.0;
  for (int i = 0; i < num_sets; ++i) {
    std::vector<double> vals(u.n, 0.0);
    double per_item = static_cast<double>(beta.values[i]) / d;
    for (int idx : mask_to_items(sets[i])) vals[idx] = per_item;
    support.emplace_back(1.0 / num_sets, Valuation::additive(u, vals));
    pi_acc[sets[i]] += 1.0 / num_sets;
    sum_half_b += static_cast<double>(beta.values[i]) / 2.0;
  }
  std::vector<DemandDistribution::Atom> atoms;
  for (const auto& [s, w] : pi_acc) atoms.emplace_back(w, s);

  LowerBoundInstance inst{ValuationDistribution(u, std::move(support)), p,
                          DemandDistribution::explicit_support(
                              u, std::move(atoms)),
                          CompletionMode::kCover, sum_half_b / num_sets};

  // Each type must buy a set costing exactly b_i/2.
  for (int i = 0; i < num_sets; ++i) {
    DemandResult r = u.n <= 16
                         ? best_response(inst.d.support()[i].second, p, tol,
                                         BestResponseMode::kExhaustive)
                         : best_response(inst.d.support()[i].second, p, tol);
    if (r.price_paid != static_cast<double>(beta.values[i]) / 2.0) {
      throw Error(ErrorKind::kAssertion,
                  "build_additive_instance: type " + std::to_string(i) +
                      " pays " + std::to_string(r.price_paid) +
                      " instead of b_i/2");
    }
  }
  return inst;
}

double approx_from_below_ratio(const Pricing& q, const Pricing& p,
                               const DemandDistribution& pi,
                               const ToleranceConfig& tol) {
  tol.validate();
  const DemandDistribution expanded = pi.expanded();
  double numerator = 0.0;
  double denominator = 0.0;
  for (const auto& [w, s] : expanded.atoms()) {
    double ps = p.price(s);
    double qs = q.price(s);
    require(std::isfinite(ps) && std::isfinite(qs),
            "approx_from_below_ratio needs finite prices on the support");
    numerator += w * ps;
    if (qs <= ps + tol.eps_price) denominator += w * qs;
  }
  if (denominator <= 0.0) return kInf;
  return numerator / denominator;
}

GapReport gap_report(const LowerBoundInstance& inst, const GapConfig& config,
                     const ToleranceConfig& tol) {
  GapReport report;
  report.rev_p = revenue(inst.d, inst.p, tol);

  SimpleOptResult brev = brev_exact(inst.d, tol);
  report.brev = brev.value;
  report.adversaries.push_back(
      {"bundle", brev.value,
       approx_from_below_ratio(brev.best_pricing, inst.p, inst.pi, tol)});

  bool all_single_minded = true;
  for (const auto& [w, v] : inst.d.support()) {
    if (v.kind() != Valuation::Kind::kSingleMinded) all_single_minded = false;
  }
  SimpleOptResult srev =
      (all_single_minded && inst.d.support().size() <= 14)
          ? srev_exact_singleminded(inst.d, tol)
          : srev_grid(inst.d, config.grid_levels, config.seed, tol);
  report.srev = srev.value;
  report.srev_exact = srev.exact;
  report.adversaries.push_back(
      {"item", srev.value,
       approx_from_below_ratio(srev.best_pricing, inst.p, inst.pi, tol)});

  Pricing extension = extension_with_completion(inst.p, inst.d.universe());
  double best_scaled = 0.0;
  int best_j = 0;
  for (int j = 0; j < config.scaled_levels; ++j) {
    Pricing scaled = Pricing::scaled(std::ldexp(1.0, -j), extension);
    double rev = revenue(inst.d, scaled, tol);
    if (rev > best_scaled) {
      best_scaled = rev;
      best_j = j;
    }
  }
  report.best_scaled = best_scaled;
  Pricing best_scaled_pricing =
      Pricing::scaled(std::ldexp(1.0, -best_j), extension);
  report.adversaries.push_back(
      {"scaled_extension", best_scaled,
       approx_from_below_ratio(best_scaled_pricing, inst.p, inst.pi, tol)});
  return report;
}

}  // namespace buymany
