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

#include "buymany/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>

#include "buymany/coretail.hpp"
#include "buymany/csv.hpp"
#include "buymany/demand.hpp"
#include "buymany/json_io.hpp"
#include "buymany/parallel.hpp"
#include "buymany/scaling.hpp"
#include "buymany/simple_opt.hpp"

namespace buymany {
namespace {

std::string items_string(Mask s) {
  std::string out;
  for (int i : mask_to_items(s)) {
    if (!out.empty()) out += '+';
    out += std::to_string(i);
  }
  return out;
}

Mask items_from_string(const std::string& text, int n) {
  std::vector<int> items;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    try {
      items.push_back(std::stoi(token));
    } catch (const std::exception&) {
      throw Error(ErrorKind::kValidation,
                  "bad item index '" + token + "' in target set");
    }
  }
  return items_to_mask(items, n);
}

}  // namespace

HartNisanInstance gen_hart_nisan(int n) {
  require(n >= 2 && n <= 8, "gen_hart_nisan needs 2 <= n <= 8");
  ItemUniverse u(n);
  const int num_types = (1 << n) - 1;
  std::vector<Mask> subsets;
  subsets.reserve(num_types);
  for (Mask s = 1; s < (Mask{1} << n); ++s) subsets.push_back(s);
  std::sort(subsets.begin(), subsets.end(), [](Mask a, Mask b) {
    if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
    return a < b;
  });

  // Weights proportional to n^{-i}; computed as n^{-i} then normalized so
  // the largest weight anchors at 1/Z.
  std::vector<double> weights(num_types);
  double z = 0.0;
  for (int i = 0; i < num_types; ++i) {
    weights[i] = std::pow(static_cast<double>(n), -(i + 1));
    z += weights[i];
  }

  std::vector<ValuationDistribution::Entry> support;
  std::vector<PricedSet> options;
  support.reserve(num_types);
  options.reserve(num_types);
  for (int i = 0; i < num_types; ++i) {
    Mask s = subsets[i];
    double per_item = std::pow(static_cast<double>(n), i + 1) / popcount(s);
    std::vector<double> values(n, 0.0);
    for (int idx : mask_to_items(s)) values[idx] = per_item;
    support.emplace_back(weights[i] / z, Valuation::additive(u, values));
    options.push_back({s, std::pow(static_cast<double>(n), i)});
  }
  return HartNisanInstance{ValuationDistribution(u, std::move(support)),
                           options, buy_many_closure(options, u)};
}

Pricing random_subadditive_pricing(ItemUniverse u, Rng& rng) {
  std::vector<PricedSet> options;
  for (int i = 0; i < u.n; ++i) {
    options.push_back(
        {Mask{1} << i, static_cast<double>(rng.uniform_int(1, 128)) / 32.0});
  }
  int extras = u.n >= 2 ? rng.uniform_int(u.n, 2 * u.n) : 0;
  for (int e = 0; e < extras; ++e) {
    Mask s = 0;
    while (popcount(s) < 2) {
      s = static_cast<Mask>(rng.below(u.table_size()));
    }
    options.push_back(
        {s, static_cast<double>(rng.uniform_int(1, 160)) / 32.0});
  }
  return buy_many_closure(options, u);
}

std::vector<double> random_marginals(int n, Rng& rng) {
  std::vector<double> pi(n);
  for (double& x : pi) {
    x = static_cast<double>(rng.uniform_int(1, 63)) / 64.0;
  }
  return pi;
}

Valuation random_monotone_valuation(ItemUniverse u, Rng& rng) {
  std::vector<double> values(u.table_size(), 0.0);
  for (Mask s = 1; s < u.table_size(); ++s) {
    double floor = 0.0;
    for (int i : mask_to_items(s)) {
      floor = std::max(floor, values[s & ~(Mask{1} << i)]);
    }
    values[s] = floor + static_cast<double>(rng.uniform_int(0, 32)) / 16.0;
  }
  return Valuation::explicit_table(u, std::move(values));
}

ValuationDistribution random_distribution(ItemUniverse u, int max_types,
                                          Rng& rng) {
  int types = rng.uniform_int(1, max_types);
  std::vector<ValuationDistribution::Entry> support;
  std::vector<double> weights(types);
  double total = 0.0;
  for (double& w : weights) {
    w = static_cast<double>(rng.uniform_int(1, 16));
    total += w;
  }
  for (int t = 0; t < types; ++t) {
    support.emplace_back(weights[t] / total, random_monotone_valuation(u, rng));
  }
  return ValuationDistribution(u, std::move(support));
}

std::string run_verify(const std::string& pricing_json) {
  Pricing p = pricing_doc_from_json(pricing_json);
  CheckReport report = check_deterministic_sybil_proof(p);
  CsvWriter csv(
      "monotone,subadditive,partial,monotone_witnesses,subadditive_witnesses,"
      "first_witness");
  std::string witness;
  if (!report.monotone_witnesses.empty()) {
    witness = items_string(report.monotone_witnesses[0].first) + "<" +
              items_string(report.monotone_witnesses[0].second);
  } else if (!report.subadditive_witnesses.empty()) {
    witness = items_string(report.subadditive_witnesses[0].first) + "|" +
              items_string(report.subadditive_witnesses[0].second);
  }
  csv.row(report.monotone ? "true" : "false",
          report.subadditive ? "true" : "false",
          report.partial ? "true" : "false",
          static_cast<int>(report.monotone_witnesses.size()),
          static_cast<int>(report.subadditive_witnesses.size()), witness);
  return csv.take();
}

std::string run_closure(const std::string& options_json) {
  auto [options, u] = options_doc_from_json(options_json);
  Pricing closure = buy_many_closure(options, u);
  CsvWriter csv("set,price");
  for (Mask s = 0; s < u.table_size(); ++s) {
    double price = closure.price(s);
    csv.row(items_string(s), std::isinf(price) ? std::string("inf")
                                               : format_number(price));
  }
  return csv.take();
}

std::string run_revenue(const std::string& instance_json, std::uint64_t seed) {
  auto [d, p] = instance_doc_from_json(instance_json);
  double rev = revenue(d, p);
  bool all_single_minded = true;
  for (const auto& [w, v] : d.support()) {
    if (v.kind() != Valuation::Kind::kSingleMinded) all_single_minded = false;
  }
  SimpleOptResult srev = (all_single_minded && d.support().size() <= 14)
                             ? srev_exact_singleminded(d)
                             : srev_grid(d, 16, seed);
  SimpleOptResult brev = brev_exact(d);
  CsvWriter csv("n,rev,srev,srev_exact,brev");
  csv.row(d.n(), rev, srev.value, srev.exact ? "true" : "false", brev.value);
  return csv.take();
}

std::string run_scale(const std::string& instance_json,
                      const ScaleParams& params) {
  auto [d, p] = instance_doc_from_json(instance_json);
  Theorem3Report t3 = theorem3_check(p, d);
  double lo = params.lo > 0.0 ? params.lo : t3.lo;
  double hi = params.hi > 0.0 ? params.hi : t3.hi;
  require(lo <= hi, "scale: need lo <= hi");
  ScaleDistribution sd(lo, hi);
  Pricing q = additive_extension(p);
  CombinedBoundReport cb = combined_bound_check(p, d, params.a_max);
  CsvWriter csv(
      "type,rev_p,e_scaled,lemma4_gap,c,theorem3_margin,combined_margin");
  for (std::size_t i = 0; i < d.support().size(); ++i) {
    const Valuation& v = d.support()[i].second;
    ScaledRevenueResult lem = expected_scaled_revenue(v, q, sd);
    double closed_form =
        lo < hi ? (lem.u_lo - lem.u_hi) / std::log(hi / lo) : lem.value;
    double rev_p = best_response(v, p).price_paid;
    csv.row(static_cast<int>(i), rev_p, lem.value, lem.value - closed_form,
            t3.c, t3.per_type[i].margin, cb.per_type[i].margin);
  }
  return csv.take();
}

std::string run_lottery(const std::string& menu_json,
                        const std::string& target_items) {
  LotteryMenu menu = menu_doc_from_json(menu_json);
  Mask target = items_from_string(target_items, menu.n());
  ItemFloors floors = lottery_item_floor(menu);
  CsvWriter csv("kind,a,b,value");
  for (int i = 0; i < menu.n(); ++i) {
    csv.row("floor", std::to_string(i), std::to_string(floors.option_index[i]),
            std::isinf(floors.floor[i]) ? std::string("inf")
                                        : format_number(floors.floor[i]));
  }
  bool reachable = true;
  for (int i : mask_to_items(target)) {
    if (floors.option_index[i] < 0) reachable = false;
  }
  csv.row("adaptive_cost", items_string(target), std::string(""),
          reachable ? format_number(adaptive_acquisition_cost(menu, target))
                    : std::string("inf"));
  for (std::size_t i = 0; i < menu.options().size(); ++i) {
    for (std::size_t j = 0; j < menu.options().size(); ++j) {
      if (i == j) continue;
      bool dom = dominates(menu.options()[i].lottery, menu.options()[j].lottery);
      csv.row("dominates", std::to_string(i), std::to_string(j),
              std::string(dom ? "1" : "0"));
    }
  }
  return csv.take();
}

LowerboundOutput run_lowerbound(const LowerboundParams& params) {
  SetSystemParams sp;
  sp.n = params.n;
  sp.num_sets = params.num_sets;
  sp.set_size = params.set_size;
  sp.max_overlap = params.max_overlap;
  require(params.samples >= 1, "need samples >= 1");
  ItemUniverse u(params.n);
  std::vector<Mask> sets = gen_set_system(sp, derive_seed(params.seed, 0));

  struct Row {
    std::uint64_t sample_seed;
    double rev_p, identity_gap, brev, srev, best_scaled;
    double ratio_brev, ratio_srev, ratio_scaled;
    double afb_brev, afb_srev, afb_scaled;
    std::uint64_t resamples;
  };
  std::vector<Row> rows(params.samples);
  std::atomic<std::uint64_t> total_resamples{0};

  parallel_for(params.samples, params.threads, [&](std::size_t idx) {
    // Per-sample seed stream; rejected beta draws burn sub-counters so every
    // sample is reproducible in isolation.
    std::uint64_t resamples = 0;
    LowerBoundInstance inst = [&] {
      for (std::uint64_t attempt = 0;; ++attempt) {
        require(attempt < 100000, "beta resampling budget exhausted");
        std::uint64_t s =
            derive_seed(params.seed, 1 + idx * 131072 + attempt);
        BetaVector beta =
            sample_beta(params.num_sets, params.m, params.b_min, s);
        try {
          return build_singleminded_instance(sets, beta, u,
                                             CompletionMode::kCover);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::kValidation) throw;
          ++resamples;
        }
      }
    }();
    GapConfig gc;
    gc.seed = derive_seed(params.seed, 7777 + idx);
    GapReport gap = gap_report(inst, gc);
    Row& row = rows[idx];
    row.sample_seed = derive_seed(params.seed, 1 + idx * 131072 + resamples);
    row.rev_p = gap.rev_p;
    row.identity_gap = std::abs(gap.rev_p - inst.expected_revenue);
    row.brev = gap.brev;
    row.srev = gap.srev;
    row.best_scaled = gap.best_scaled;
    row.ratio_brev = gap.brev > 0 ? gap.rev_p / gap.brev : kInf;
    row.ratio_srev = gap.srev > 0 ? gap.rev_p / gap.srev : kInf;
    row.ratio_scaled = gap.best_scaled > 0 ? gap.rev_p / gap.best_scaled : kInf;
    row.afb_brev = gap.adversaries[0].afb_ratio;
    row.afb_srev = gap.adversaries[1].afb_ratio;
    row.afb_scaled = gap.adversaries[2].afb_ratio;
    row.resamples = resamples;
    total_resamples += resamples;
  });

  CsvWriter csv(
      "seed,N,m,rev_p,identity_gap,brev,srev,best_scaled,ratio_brev,"
      "ratio_srev,ratio_scaled,afb_brev,afb_srev,afb_scaled,beta_resamples");
  for (const Row& row : rows) {
    csv.row(row.sample_seed, params.num_sets, params.m, row.rev_p,
            row.identity_gap, row.brev, row.srev, row.best_scaled,
            row.ratio_brev, row.ratio_srev, row.ratio_scaled, row.afb_brev,
            row.afb_srev, row.afb_scaled, row.resamples);
  }
  return LowerboundOutput{csv.take(), total_resamples.load()};
}

std::string run_coretail(const CoretailParams& params) {
  require(params.n >= 1 && params.n <= 12,
          "coretail pipeline needs 1 <= n <= 12");
  require(params.samples >= 1, "need samples >= 1");
  ItemUniverse u(params.n);

  struct Row {
    std::uint64_t sample_seed;
    DecompositionReport report;
  };
  std::vector<Row> rows(params.samples);
  parallel_for(params.samples, params.threads, [&](std::size_t idx) {
    std::uint64_t s = derive_seed(params.seed, idx);
    Rng rng(s);
    Pricing p = random_subadditive_pricing(u, rng);
    DemandDistribution pi =
        DemandDistribution::product_marginals(u, random_marginals(u.n, rng));
    rows[idx] = Row{s, decomposition_report(p, pi)};
  });

  CsvWriter csv("n,seed,rev,e_tail,e_core,a,c,brev,tail_srev,ratio,regime");
  for (const Row& row : rows) {
    csv.row(params.n, row.sample_seed, row.report.rev, row.report.e_tail,
            row.report.e_core, row.report.a, row.report.c, row.report.brev,
            row.report.tail_srev, row.report.ratio,
            row.report.regime == SplitRegime::kStandard
                ? std::string("standard")
                : std::string("tail-only"));
  }
  return csv.take();
}

std::string run_hartnisan(int n, std::uint64_t seed) {
  HartNisanInstance inst = gen_hart_nisan(n);
  double raw_rev = 0.0;
  double expected_value = 0.0;
  const Mask full = inst.d.universe().full_mask();
  for (const auto& [w, v] : inst.d.support()) {
    raw_rev += w * menu_best_response(v, inst.options).price_paid;
    expected_value += w * v.value(full);
  }
  double closure_rev = revenue(inst.d, inst.closure);
  SimpleOptResult srev = srev_grid(inst.d, 64, seed);
  SimpleOptResult brev = brev_exact(inst.d);
  double best_simple = std::max(srev.value, brev.value);

  CsvWriter csv(
      "n,raw_rev,closure_rev,expected_value,srev,brev,ratio_raw_simple,"
      "identity_gap");
  csv.row(n, raw_rev, closure_rev, expected_value, srev.value, brev.value,
          best_simple > 0 ? raw_rev / best_simple : kInf,
          std::abs(raw_rev - expected_value / n));
  return csv.take();
}

}  // namespace buymany
