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

#include "buymany/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace buymany {
namespace {

void require_price(double x, const std::string& where) {
  require(!std::isnan(x) && x >= 0.0, where + ": prices must be >= 0");
}

void require_finite_price(double x, const std::string& where) {
  require_price(x, where);
  require(std::isfinite(x), where + ": price must be finite");
}

// Weighted-set-cover DP over the submask lattice of `scope`. Option masks are
// pre-intersected with the scope; clearing bits strictly decreases the mask,
// so a single increasing pass is enough.
std::vector<double> cover_dp(const std::vector<PricedSet>& options,
                             Mask scope) {
  int k = popcount(scope);
  std::vector<int> items = mask_to_items(scope);
  std::vector<PricedSet> local;
  local.reserve(options.size());
  for (const auto& opt : options) {
    Mask m = 0;
    for (int j = 0; j < k; ++j) {
      if (opt.set & (Mask{1} << items[j])) m |= Mask{1} << j;
    }
    if (m != 0) local.push_back({m, opt.price});
  }
  std::vector<double> f(std::size_t{1} << k, kInf);
  f[0] = 0.0;
  for (Mask s = 1; s < (Mask{1} << k); ++s) {
    double best = kInf;
    for (const auto& opt : local) {
      if (opt.set & s) {
        double cand = opt.price + f[s & ~opt.set];
        if (cand < best) best = cand;
      }
    }
    f[s] = best;
  }
  return f;
}

}  // namespace

Pricing Pricing::explicit_table(ItemUniverse u, std::vector<double> prices) {
  require(u.n <= kTableMaxItems, "explicit pricing table requires n <= " +
                                     std::to_string(kTableMaxItems));
  require(prices.size() == u.table_size(),
          "explicit pricing table must have 2^n entries");
  require(prices[0] == 0.0, "explicit pricing must store 0 for the empty set");
  for (double x : prices) require_price(x, "explicit pricing");
  Pricing p(u, Kind::kExplicit);
  p.data_ = ExplicitData{std::move(prices)};
  return p;
}

Pricing Pricing::item(ItemUniverse u, std::vector<double> item_prices) {
  require(item_prices.size() == static_cast<std::size_t>(u.n),
          "item pricing needs one price per item");
  for (double x : item_prices) require_finite_price(x, "item pricing");
  Pricing p(u, Kind::kItem);
  p.data_ = ItemData{std::move(item_prices)};
  return p;
}

Pricing Pricing::uniform_item(ItemUniverse u, double per_item_price) {
  return item(u, std::vector<double>(u.n, per_item_price));
}

Pricing Pricing::bundle(ItemUniverse u, double price) {
  require_finite_price(price, "bundle pricing");
  Pricing p(u, Kind::kBundle);
  p.data_ = BundleData{price};
  return p;
}

Pricing Pricing::cover(ItemUniverse u, std::vector<PricedSet> options) {
  for (const auto& opt : options) {
    require_finite_price(opt.price, "cover option");
    require(is_subset(opt.set, u.full_mask()),
            "cover option set exceeds the universe");
  }
  Pricing p(u, Kind::kCover);
  auto data = std::make_shared<CoverData>();
  data->options = std::move(options);
  p.data_ = std::move(data);
  return p;
}

Pricing Pricing::scaled(double factor, Pricing inner) {
  require(std::isfinite(factor) && factor > 0.0,
          "scaling factor must be finite and > 0");
  Pricing p(inner.universe_, Kind::kScaled);
  p.data_ = ScaledData{factor, std::make_shared<const Pricing>(std::move(inner))};
  return p;
}

double Pricing::price(Mask s) const {
  switch (kind_) {
    case Kind::kExplicit:
      return std::get<ExplicitData>(data_).prices[s];
    case Kind::kItem: {
      const auto& q = std::get<ItemData>(data_).prices;
      double total = 0.0;
      Mask rem = s;
      while (rem) {
        total += q[std::countr_zero(rem)];
        rem &= rem - 1;
      }
      return total;
    }
    case Kind::kBundle:
      return s == 0 ? 0.0 : std::get<BundleData>(data_).price;
    case Kind::kCover: {
      const auto& data = *std::get<std::shared_ptr<CoverData>>(data_);
      if (universe_.n <= kTableMaxItems) {
        std::call_once(data.once, [&] {
          data.table = cover_dp(data.options, universe_.full_mask());
        });
        return data.table[s];
      }
      require(popcount(s) <= kEnumMaxItems,
              "cover price query on a set with more than " +
                  std::to_string(kEnumMaxItems) + " items in a large universe");
      auto f = cover_dp(data.options, s);
      return f.back();
    }
    case Kind::kScaled: {
      const auto& data = std::get<ScaledData>(data_);
      return data.factor * data.inner->price(s);
    }
  }
  return kInf;  // unreachable
}

bool Pricing::structurally_monotone() const {
  switch (kind_) {
    case Kind::kItem:
    case Kind::kBundle:
    case Kind::kCover:
      return true;
    case Kind::kScaled:
      return std::get<ScaledData>(data_).inner->structurally_monotone();
    case Kind::kExplicit:
      return false;
  }
  return false;
}

const std::vector<double>& Pricing::explicit_prices() const {
  return std::get<ExplicitData>(data_).prices;
}
const std::vector<double>& Pricing::item_prices() const {
  return std::get<ItemData>(data_).prices;
}
double Pricing::bundle_price() const {
  return std::get<BundleData>(data_).price;
}
const std::vector<PricedSet>& Pricing::cover_options() const {
  return std::get<std::shared_ptr<CoverData>>(data_)->options;
}
double Pricing::scale_factor() const {
  return std::get<ScaledData>(data_).factor;
}
const Pricing& Pricing::scaled_inner() const {
  return *std::get<ScaledData>(data_).inner;
}

Valuation Valuation::explicit_table(ItemUniverse u,
                                    std::vector<double> values) {
  require(u.n <= kTableMaxItems, "explicit valuation table requires n <= " +
                                     std::to_string(kTableMaxItems));
  require(values.size() == u.table_size(),
          "explicit valuation table must have 2^n entries");
  require(values[0] == 0.0, "valuation of the empty set must be 0");
  for (double x : values) {
    require(std::isfinite(x) && x >= 0.0, "valuations must be finite and >= 0");
  }
  for (Mask s = 0; s < u.table_size(); ++s) {
    for (int i = 0; i < u.n; ++i) {
      Mask t = s | (Mask{1} << i);
      if (t != s) {
        require(values[s] <= values[t],
                "explicit valuation is not monotone at sets " +
                    std::to_string(s) + " <= " + std::to_string(t));
      }
    }
  }
  Valuation v(u, Kind::kExplicit);
  v.data_ = std::move(values);
  return v;
}

Valuation Valuation::additive(ItemUniverse u, std::vector<double> item_values) {
  require(item_values.size() == static_cast<std::size_t>(u.n),
          "additive valuation needs one value per item");
  for (double x : item_values) {
    require(std::isfinite(x) && x >= 0.0, "valuations must be finite and >= 0");
  }
  Valuation v(u, Kind::kAdditive);
  v.data_ = std::move(item_values);
  return v;
}

Valuation Valuation::single_minded(ItemUniverse u, Mask set, double value) {
  // The empty set is allowed only as the all-zero valuation.
  require(set != 0 || value == 0.0,
          "single-minded valuation on the empty set must have value 0");
  require(is_subset(set, u.full_mask()),
          "single-minded set exceeds the universe");
  require(std::isfinite(value) && value >= 0.0,
          "valuations must be finite and >= 0");
  Valuation v(u, Kind::kSingleMinded);
  v.data_ = SingleMindedData{set, value};
  return v;
}

Valuation Valuation::unit_demand(ItemUniverse u,
                                 std::vector<double> item_values) {
  require(item_values.size() == static_cast<std::size_t>(u.n),
          "unit-demand valuation needs one value per item");
  for (double x : item_values) {
    require(std::isfinite(x) && x >= 0.0, "valuations must be finite and >= 0");
  }
  Valuation v(u, Kind::kUnitDemand);
  v.data_ = std::move(item_values);
  return v;
}

double Valuation::value(Mask s) const {
  switch (kind_) {
    case Kind::kExplicit:
      return std::get<std::vector<double>>(data_)[s];
    case Kind::kAdditive: {
      const auto& vals = std::get<std::vector<double>>(data_);
      double total = 0.0;
      Mask rem = s;
      while (rem) {
        total += vals[std::countr_zero(rem)];
        rem &= rem - 1;
      }
      return total;
    }
    case Kind::kSingleMinded: {
      const auto& data = std::get<SingleMindedData>(data_);
      return is_subset(data.set, s) ? data.value : 0.0;
    }
    case Kind::kUnitDemand: {
      const auto& vals = std::get<std::vector<double>>(data_);
      double best = 0.0;
      Mask rem = s;
      while (rem) {
        best = std::max(best, vals[std::countr_zero(rem)]);
        rem &= rem - 1;
      }
      return best;
    }
  }
  return 0.0;  // unreachable
}

const std::vector<double>& Valuation::explicit_values() const {
  return std::get<std::vector<double>>(data_);
}
const std::vector<double>& Valuation::item_values() const {
  return std::get<std::vector<double>>(data_);
}
Mask Valuation::single_minded_set() const {
  return std::get<SingleMindedData>(data_).set;
}
double Valuation::single_minded_value() const {
  return std::get<SingleMindedData>(data_).value;
}

ValuationDistribution::ValuationDistribution(ItemUniverse u,
                                             std::vector<Entry> support)
    : universe_(u), support_(std::move(support)) {
  require(!support_.empty(), "valuation distribution needs nonempty support");
  double total = 0.0;
  for (const auto& [w, v] : support_) {
    require(std::isfinite(w) && w > 0.0, "support weights must be > 0");
    require(v.universe() == universe_,
            "all valuations must share the distribution's universe");
    total += w;
  }
  require(std::abs(total - 1.0) <= 1e-12,
          "support weights must sum to 1 (got " + std::to_string(total) + ")");
}

CheckReport check_deterministic_sybil_proof(const Pricing& p,
                                            const ToleranceConfig& tol,
                                            std::size_t max_witnesses) {
  tol.validate();
  int n = p.n();
  require(n <= 13, "sybil-proofness check enumerates O(4^n) pairs; n <= 13");
  CheckReport report;
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> f(size);
  for (Mask s = 0; s < size; ++s) {
    f[s] = p.price(s);
    if (std::isinf(f[s])) report.partial = true;
  }
  // Monotonicity over covering pairs; a chain of single-item steps certifies
  // every pair S subset T up to n*eps accumulation.
  for (Mask s = 0; s < size; ++s) {
    for (int i = 0; i < n; ++i) {
      Mask t = s | (Mask{1} << i);
      if (t == s) continue;
      if (f[s] > f[t] + tol.eps_price) {
        report.monotone = false;
        if (report.monotone_witnesses.size() < max_witnesses) {
          report.monotone_witnesses.emplace_back(s, t);
        }
      }
    }
  }
  for (Mask s = 1; s < size; ++s) {
    for (Mask t = s; t < size; ++t) {
      if (f[s | t] > f[s] + f[t] + tol.eps_price) {
        report.subadditive = false;
        if (report.subadditive_witnesses.size() < max_witnesses) {
          report.subadditive_witnesses.emplace_back(s, t);
        }
      }
    }
  }
  return report;
}

Pricing buy_many_closure(const std::vector<PricedSet>& options,
                         ItemUniverse u) {
  require(u.n <= kTableMaxItems, "buy_many_closure materializes a 2^n table; "
                                 "use Pricing::cover for larger universes");
  for (const auto& opt : options) {
    require(std::isfinite(opt.price) && opt.price >= 0.0,
            "closure option prices must be finite and >= 0");
    require(is_subset(opt.set, u.full_mask()),
            "closure option set exceeds the universe");
  }
  return Pricing::explicit_table(u, cover_dp(options, u.full_mask()));
}

Pricing additive_extension(const Pricing& p) {
  std::vector<double> q(p.n());
  for (int i = 0; i < p.n(); ++i) {
    q[i] = p.price(Mask{1} << i);
    if (!std::isfinite(q[i])) {
      throw Error(ErrorKind::kValidation,
                  "additive_extension: price of item " + std::to_string(i) +
                      " is not finite");
    }
  }
  return Pricing::item(p.universe(), std::move(q));
}

std::vector<double> price_table(const Pricing& p) {
  require(p.n() <= kEnumMaxItems, "price_table requires n <= " +
                                      std::to_string(kEnumMaxItems));
  std::vector<double> f(std::size_t{1} << p.n());
  for (Mask s = 0; s < f.size(); ++s) f[s] = p.price(s);
  return f;
}

std::vector<double> value_table(const Valuation& v) {
  require(v.n() <= kEnumMaxItems, "value_table requires n <= " +
                                      std::to_string(kEnumMaxItems));
  std::vector<double> f(std::size_t{1} << v.n());
  for (Mask s = 0; s < f.size(); ++s) f[s] = v.value(s);
  return f;
}

}  // namespace buymany
