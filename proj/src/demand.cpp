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

#include "buymany/demand.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace buymany {
namespace {

// Seller-favorable preference among utility-tied candidates.
bool prefer(double price_a, Mask a, double price_b, Mask b) {
  if (price_a != price_b) return price_a > price_b;
  int ca = popcount(a), cb = popcount(b);
  if (ca != cb) return ca < cb;
  return a < b;
}

}  // namespace

DemandResult best_response(const Valuation& v, const Pricing& p,
                           const ToleranceConfig& tol, BestResponseMode mode) {
  tol.validate();
  require(v.universe() == p.universe(),
          "valuation and pricing must share one universe");
  require(std::isfinite(p.price(0)) && p.price(0) == 0.0,
          "pricing must charge 0 for the empty set");

  const bool structural = mode == BestResponseMode::kAuto &&
                          v.kind() == Valuation::Kind::kSingleMinded &&
                          p.structurally_monotone();
  if (structural) {
    // For a single-minded buyer against a monotone pricing the only
    // candidates are the wanted set itself (its cheapest superset) and
    // walking away. Agreement with the exhaustive scan is property-tested.
    Mask want = v.single_minded_set();
    double price = p.price(want);
    if (!std::isfinite(price)) return DemandResult{0, 0.0, 0.0};
    double u = v.single_minded_value() - price;
    double best_u = std::max(0.0, u);
    bool want_in = u + tol.eps_tie >= best_u;
    bool empty_in = tol.eps_tie >= best_u;
    if (want_in && (!empty_in || prefer(price, want, 0.0, Mask{0}))) {
      return DemandResult{want, price, u};
    }
    return DemandResult{0, 0.0, 0.0};
  }

  int n = p.n();
  require(n <= kEnumMaxItems,
          "exhaustive best response requires n <= " +
              std::to_string(kEnumMaxItems) +
              " (structural path needs a single-minded valuation and a "
              "monotone pricing form)");
  const std::size_t size = std::size_t{1} << n;
  double best_utility = 0.0;
  for (Mask s = 0; s < size; ++s) {
    double u = v.value(s) - p.price(s);
    if (u > best_utility) best_utility = u;
  }
  DemandResult out{0, 0.0, 0.0};
  bool have = false;
  for (Mask s = 0; s < size; ++s) {
    double price = p.price(s);
    double u = v.value(s) - price;
    if (u + tol.eps_tie < best_utility) continue;
    if (!have || prefer(price, s, out.price_paid, out.chosen_set)) {
      out = DemandResult{s, price, u};
      have = true;
    }
  }
  return out;
}

double revenue(const ValuationDistribution& d, const Pricing& p,
               const ToleranceConfig& tol) {
  require(d.universe() == p.universe(),
          "distribution and pricing must share one universe");
  double total = 0.0;
  for (const auto& [w, v] : d.support()) {
    total += w * best_response(v, p, tol).price_paid;
  }
  return total;
}

DemandDistribution DemandDistribution::explicit_support(
    ItemUniverse u, std::vector<Atom> atoms) {
  require(!atoms.empty(), "demand distribution needs nonempty support");
  double total = 0.0;
  for (const auto& [w, s] : atoms) {
    require(std::isfinite(w) && w > 0.0,
            "demand probabilities must be > 0");
    require(is_subset(s, u.full_mask()), "demand set exceeds the universe");
    total += w;
  }
  require(std::abs(total - 1.0) <= 1e-12,
          "demand probabilities must sum to 1");
  DemandDistribution d(u);
  d.atoms_ = std::move(atoms);
  return d;
}

DemandDistribution DemandDistribution::product_marginals(
    ItemUniverse u, std::vector<double> pi) {
  require(pi.size() == static_cast<std::size_t>(u.n),
          "product marginals need one probability per item");
  for (double x : pi) {
    require(std::isfinite(x) && x >= 0.0 && x <= 1.0,
            "marginals must lie in [0, 1]");
  }
  DemandDistribution d(u);
  d.product_ = true;
  d.marginals_ = std::move(pi);
  return d;
}

const std::vector<DemandDistribution::Atom>& DemandDistribution::atoms() const {
  require(!product_, "demand distribution is in product form");
  return atoms_;
}

const std::vector<double>& DemandDistribution::marginals() const {
  require(product_, "demand distribution is in explicit form");
  return marginals_;
}

DemandDistribution DemandDistribution::expanded() const {
  if (!product_) return *this;
  int n = universe_.n;
  require(n <= kTableMaxItems, "product expansion requires n <= " +
                                   std::to_string(kTableMaxItems));
  std::vector<Atom> atoms;
  const std::size_t size = std::size_t{1} << n;
  for (Mask s = 0; s < size; ++s) {
    double w = 1.0;
    for (int i = 0; i < n; ++i) {
      w *= (s & (Mask{1} << i)) ? marginals_[i] : 1.0 - marginals_[i];
    }
    if (w > 0.0) atoms.emplace_back(w, s);
  }
  // Renormalize the tiny fp drift so the explicit invariant holds.
  double total = 0.0;
  for (auto& [w, s] : atoms) total += w;
  for (auto& [w, s] : atoms) w /= total;
  return explicit_support(universe_, std::move(atoms));
}

DemandDistribution demand_distribution(const Pricing& p,
                                       const ValuationDistribution& d,
                                       const ToleranceConfig& tol) {
  require(d.universe() == p.universe(),
          "distribution and pricing must share one universe");
  std::map<Mask, double> agg;
  for (const auto& [w, v] : d.support()) {
    agg[best_response(v, p, tol).chosen_set] += w;
  }
  std::vector<DemandDistribution::Atom> atoms;
  atoms.reserve(agg.size());
  for (const auto& [s, w] : agg) atoms.emplace_back(w, s);
  return DemandDistribution::explicit_support(p.universe(), std::move(atoms));
}

ValuationDistribution singleminded_from_demand(const DemandDistribution& pi,
                                               const Pricing& p,
                                               int mc_samples,
                                               std::uint64_t seed) {
  require(pi.universe() == p.universe(),
          "demand distribution and pricing must share one universe");
  DemandDistribution expanded = pi;
  if (pi.is_product()) {
    if (pi.n() <= kTableMaxItems) {
      expanded = pi.expanded();
    } else {
      require(mc_samples > 0,
              "product form with n > " + std::to_string(kTableMaxItems) +
                  " requires a Monte Carlo sample count");
      Rng rng(seed);
      std::map<Mask, double> agg;
      const auto& m = pi.marginals();
      for (int k = 0; k < mc_samples; ++k) {
        Mask s = 0;
        for (int i = 0; i < pi.n(); ++i) {
          if (rng.uniform01() < m[i]) s |= Mask{1} << i;
        }
        agg[s] += 1.0 / mc_samples;
      }
      std::vector<DemandDistribution::Atom> atoms;
      for (const auto& [s, w] : agg) atoms.emplace_back(w, s);
      expanded =
          DemandDistribution::explicit_support(pi.universe(), std::move(atoms));
    }
  }
  std::vector<ValuationDistribution::Entry> support;
  support.reserve(expanded.atoms().size());
  for (const auto& [w, s] : expanded.atoms()) {
    double price = p.price(s);
    if (!std::isfinite(price)) {
      throw Error(ErrorKind::kValidation,
                  "singleminded_from_demand: price of support set " +
                      std::to_string(s) + " is not finite");
    }
    // The empty set (price 0) maps to the all-zero single-minded valuation.
    support.emplace_back(
        w, s == 0 ? Valuation::single_minded(pi.universe(), 0, 0.0)
                  : Valuation::single_minded(pi.universe(), s, price));
  }
  return ValuationDistribution(pi.universe(), std::move(support));
}

DemandResult menu_best_response(const Valuation& v,
                                const std::vector<PricedSet>& options,
                                const ToleranceConfig& tol) {
  tol.validate();
  double best_utility = 0.0;
  for (const auto& opt : options) {
    double u = v.value(opt.set) - opt.price;
    if (u > best_utility) best_utility = u;
  }
  DemandResult out{0, 0.0, 0.0};
  for (const auto& opt : options) {
    double u = v.value(opt.set) - opt.price;
    if (u + tol.eps_tie < best_utility) continue;
    if (prefer(opt.price, opt.set, out.price_paid, out.chosen_set)) {
      out = DemandResult{opt.set, opt.price, u};
    }
  }
  return out;
}

}  // namespace buymany
