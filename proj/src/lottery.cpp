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

#include "buymany/lottery.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "buymany/rng.hpp"

namespace buymany {
namespace {

constexpr double kFlowEps = 1e-12;

// Max flow by shortest augmenting paths on a small dense graph.
class DenseFlow {
 public:
  explicit DenseFlow(int nodes) : n_(nodes), cap_(nodes * nodes, 0.0) {}

  void add(int from, int to, double cap) { cap_[from * n_ + to] += cap; }

  double max_flow(int source, int sink) {
    double total = 0.0;
    for (;;) {
      std::vector<int> parent(n_, -1);
      parent[source] = source;
      std::deque<int> queue{source};
      while (!queue.empty() && parent[sink] < 0) {
        int u = queue.front();
        queue.pop_front();
        for (int v = 0; v < n_; ++v) {
          if (parent[v] < 0 && cap_[u * n_ + v] > kFlowEps) {
            parent[v] = u;
            queue.push_back(v);
          }
        }
      }
      if (parent[sink] < 0) break;
      double push = kInf;
      for (int v = sink; v != source; v = parent[v]) {
        push = std::min(push, cap_[parent[v] * n_ + v]);
      }
      for (int v = sink; v != source; v = parent[v]) {
        cap_[parent[v] * n_ + v] -= push;
        cap_[v * n_ + parent[v]] += push;
      }
      total += push;
    }
    return total;
  }

 private:
  int n_;
  std::vector<double> cap_;
};

}  // namespace

Lottery::Lottery(ItemUniverse u, std::vector<Outcome> outcomes)
    : universe_(u), outcomes_(std::move(outcomes)) {
  require(!outcomes_.empty(), "lottery needs at least one outcome");
  double total = 0.0;
  for (const auto& [p, s] : outcomes_) {
    require(std::isfinite(p) && p > 0.0, "outcome probabilities must be > 0");
    require(is_subset(s, universe_.full_mask()),
            "lottery outcome exceeds the universe");
    total += p;
  }
  require(std::abs(total - 1.0) <= 1e-12,
          "outcome probabilities must sum to 1");
}

double Lottery::prob_contains(int item) const {
  double p = 0.0;
  for (const auto& [w, s] : outcomes_) {
    if (s & (Mask{1} << item)) p += w;
  }
  return p;
}

double Lottery::prob_disjoint(Mask a) const {
  double p = 0.0;
  for (const auto& [w, s] : outcomes_) {
    if ((s & a) == 0) p += w;
  }
  return p;
}

double Lottery::expected_value(const Valuation& v) const {
  double total = 0.0;
  for (const auto& [w, s] : outcomes_) total += w * v.value(s);
  return total;
}

LotteryMenu::LotteryMenu(ItemUniverse u, std::vector<LotteryOption> options)
    : universe_(u), options_(std::move(options)) {
  for (const auto& opt : options_) {
    require(std::isfinite(opt.price) && opt.price >= 0.0,
            "menu prices must be finite and >= 0");
    require(opt.lottery.universe() == universe_,
            "menu options must share one universe");
  }
}

LotteryMenu LotteryMenu::from_priced_sets(
    ItemUniverse u, const std::vector<PricedSet>& options) {
  std::vector<LotteryOption> opts;
  opts.reserve(options.size());
  for (const auto& o : options) {
    opts.push_back({Lottery::point_mass(u, o.set), o.price});
  }
  return LotteryMenu(u, std::move(opts));
}

bool dominates(const Lottery& a, const Lottery& b) {
  require(a.universe() == b.universe(),
          "dominance requires one shared universe");
  const auto& oa = a.outcomes();
  const auto& ob = b.outcomes();
  const int na = static_cast<int>(oa.size());
  const int nb = static_cast<int>(ob.size());
  // Nodes: 0 source, 1..na the a-outcomes, na+1..na+nb the b-outcomes, sink.
  DenseFlow flow(na + nb + 2);
  const int sink = na + nb + 1;
  for (int i = 0; i < na; ++i) flow.add(0, 1 + i, oa[i].first);
  for (int j = 0; j < nb; ++j) flow.add(1 + na + j, sink, ob[j].first);
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < nb; ++j) {
      if (is_subset(ob[j].second, oa[i].second)) {
        flow.add(1 + i, 1 + na + j, 2.0);  // uncapped pairing edge
      }
    }
  }
  return flow.max_flow(0, sink) >= 1.0 - 1e-9;
}

ItemFloors lottery_item_floor(const LotteryMenu& menu) {
  const int n = menu.n();
  ItemFloors out;
  out.floor.assign(n, kInf);
  out.option_index.assign(n, -1);
  out.hit_prob.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < menu.options().size(); ++k) {
      const auto& opt = menu.options()[k];
      double pr = opt.lottery.prob_contains(i);
      if (pr <= 0.0) continue;
      double ratio = opt.price / pr;
      if (ratio < out.floor[i]) {
        out.floor[i] = ratio;
        out.option_index[i] = static_cast<int>(k);
        out.hit_prob[i] = pr;
      }
    }
    if (out.option_index[i] < 0) out.all_finite = false;
  }
  return out;
}

double adaptive_acquisition_cost(const LotteryMenu& menu, Mask target) {
  if (target == 0) return 0.0;
  require(is_subset(target, menu.universe().full_mask()),
          "target exceeds the universe");
  ItemFloors floors = lottery_item_floor(menu);
  for (int i : mask_to_items(target)) {
    if (floors.option_index[i] < 0) {
      throw Error(ErrorKind::kValidation,
                  "adaptive_acquisition_cost: item " + std::to_string(i) +
                      " appears in no menu option");
    }
  }
  const int k = popcount(target);
  require(k <= kEnumMaxItems, "adaptive_acquisition_cost enumerates 2^|target| "
                              "states");
  std::vector<int> items = mask_to_items(target);
  std::vector<int> local(kMaxItems, -1);
  for (int j = 0; j < k; ++j) local[items[j]] = j;

  // Compress each option's outcomes to the target lattice.
  struct LocalOption {
    double price;
    std::vector<std::pair<double, Mask>> outcomes;  // (prob, local hit mask)
  };
  std::vector<LocalOption> opts;
  for (const auto& opt : menu.options()) {
    LocalOption lo{opt.price, {}};
    for (const auto& [p, s] : opt.lottery.outcomes()) {
      Mask hit = 0;
      for (int j = 0; j < k; ++j) {
        if (s & (Mask{1} << items[j])) hit |= Mask{1} << j;
      }
      lo.outcomes.emplace_back(p, hit);
    }
    opts.push_back(std::move(lo));
  }

  std::vector<double> value(std::size_t{1} << k, kInf);
  value[0] = 0.0;
  for (Mask r = 1; r < (Mask{1} << k); ++r) {
    double best = kInf;
    for (const auto& opt : opts) {
      double hit_prob = 0.0;
      double continuation = 0.0;
      for (const auto& [p, hit] : opt.outcomes) {
        Mask gained = hit & r;
        if (gained) {
          hit_prob += p;
          continuation += p * value[r & ~gained];
        }
      }
      if (hit_prob <= 0.0) continue;
      double cand = (opt.price + continuation) / hit_prob;
      if (cand < best) best = cand;
    }
    value[r] = best;
  }
  return value.back();
}

MultisetUtility multiset_bundle_utility(const LotteryMenu& menu,
                                        const Valuation& v, Mask t, int m) {
  require(m >= 1, "multiset_bundle_utility needs m >= 1");
  require(v.universe() == menu.universe(),
          "valuation and menu must share one universe");
  if (v.kind() != Valuation::Kind::kAdditive &&
      v.kind() != Valuation::Kind::kSingleMinded) {
    throw Error(ErrorKind::kValidation,
                "multiset_bundle_utility is exact only for additive and "
                "single-minded valuations; use multiset_bundle_utility_mc");
  }
  ItemFloors floors = lottery_item_floor(menu);
  std::vector<int> items = mask_to_items(t);
  MultisetUtility out;
  struct Copy {
    const Lottery* lottery;
    long long count;
  };
  std::vector<Copy> copies;
  for (int i : items) {
    if (floors.option_index[i] < 0) {
      throw Error(ErrorKind::kValidation,
                  "multiset_bundle_utility: item " + std::to_string(i) +
                      " has an infinite floor");
    }
    const auto& opt = menu.options()[floors.option_index[i]];
    long long mi = static_cast<long long>(
        std::ceil(static_cast<double>(m) / floors.hit_prob[i] - 1e-9));
    out.copies.push_back(mi);
    out.total_price += static_cast<double>(mi) * opt.price;
    copies.push_back({&opt.lottery, mi});
  }

  if (v.kind() == Valuation::Kind::kAdditive) {
    const auto& vals = v.item_values();
    for (int j = 0; j < v.n(); ++j) {
      if (vals[j] <= 0.0) continue;
      double miss = 1.0;
      for (const auto& c : copies) {
        miss *= std::pow(1.0 - c.lottery->prob_contains(j),
                         static_cast<double>(c.count));
      }
      out.expected_value += vals[j] * (1.0 - miss);
    }
  } else {
    Mask want = v.single_minded_set();
    require(popcount(want) <= kTableMaxItems,
            "inclusion-exclusion over the wanted set requires <= 20 items");
    // Pr[want subset of union] by inclusion-exclusion over A subset of want:
    // sum (-1)^|A| prod_copies Pr[draw disjoint from A]^count.
    std::vector<int> want_items = mask_to_items(want);
    const int kw = static_cast<int>(want_items.size());
    double prob = 0.0;
    for (Mask a = 0; a < (Mask{1} << kw); ++a) {
      Mask amask = 0;
      for (int j = 0; j < kw; ++j) {
        if (a & (Mask{1} << j)) amask |= Mask{1} << want_items[j];
      }
      double term = 1.0;
      for (const auto& c : copies) {
        term *= std::pow(c.lottery->prob_disjoint(amask),
                         static_cast<double>(c.count));
      }
      prob += (popcount(a) % 2 == 0 ? term : -term);
    }
    out.expected_value = v.single_minded_value() * std::clamp(prob, 0.0, 1.0);
  }
  out.utility = out.expected_value - out.total_price;
  return out;
}

MultisetUtility multiset_bundle_utility_mc(const LotteryMenu& menu,
                                           const Valuation& v, Mask t, int m,
                                           int samples, std::uint64_t seed) {
  require(m >= 1, "multiset_bundle_utility needs m >= 1");
  require(samples >= 1, "Monte Carlo mode needs a positive sample count");
  ItemFloors floors = lottery_item_floor(menu);
  std::vector<int> items = mask_to_items(t);
  MultisetUtility out;
  struct Copy {
    const Lottery* lottery;
    long long count;
  };
  std::vector<Copy> copies;
  for (int i : items) {
    if (floors.option_index[i] < 0) {
      throw Error(ErrorKind::kValidation,
                  "multiset_bundle_utility: item " + std::to_string(i) +
                      " has an infinite floor");
    }
    const auto& opt = menu.options()[floors.option_index[i]];
    long long mi = static_cast<long long>(
        std::ceil(static_cast<double>(m) / floors.hit_prob[i] - 1e-9));
    out.copies.push_back(mi);
    out.total_price += static_cast<double>(mi) * opt.price;
    copies.push_back({&opt.lottery, mi});
  }
  Rng rng(seed);
  double total = 0.0;
  for (int s = 0; s < samples; ++s) {
    Mask got = 0;
    for (const auto& c : copies) {
      for (long long r = 0; r < c.count; ++r) {
        double u = rng.uniform01();
        double acc = 0.0;
        for (const auto& [p, setm] : c.lottery->outcomes()) {
          acc += p;
          if (u < acc) {
            got |= setm;
            break;
          }
        }
      }
    }
    total += v.value(got);
  }
  out.expected_value = total / samples;
  out.utility = out.expected_value - out.total_price;
  return out;
}

}  // namespace buymany
