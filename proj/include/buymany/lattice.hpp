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
// Subset-lattice foundations: pricing and valuation representations over
// bitset-encoded item subsets, deterministic Sybil-proofness (monotone +
// subadditive) checks, and the buy-many cover closure.

#ifndef BUYMANY_LATTICE_HPP_
#define BUYMANY_LATTICE_HPP_

#include <memory>
#include <mutex>
#include <utility>
#include <variant>
#include <vector>

#include "buymany/common.hpp"

namespace buymany {

struct PricedSet {
  Mask set = 0;
  double price = 0.0;
};

// A priced set function over the subset lattice. All forms are immutable
// after construction and safe to share across threads; the cover form
// memoizes its full price table once (initialization-safe via call_once).
class Pricing {
 public:
  enum class Kind { kExplicit, kItem, kBundle, kCover, kScaled };

  // 2^n prices; entry for the empty set must be 0; +infinity entries are
  // allowed (partial pricings, e.g. materialized closures).
  static Pricing explicit_table(ItemUniverse u, std::vector<double> prices);
  static Pricing item(ItemUniverse u, std::vector<double> item_prices);
  static Pricing uniform_item(ItemUniverse u, double per_item_price);
  static Pricing bundle(ItemUniverse u, double price);
  static Pricing cover(ItemUniverse u, std::vector<PricedSet> options);
  static Pricing scaled(double factor, Pricing inner);

  double price(Mask s) const;
  Kind kind() const { return kind_; }
  const ItemUniverse& universe() const { return universe_; }
  int n() const { return universe_.n; }

  // True when the form is monotone by construction (item, bundle, cover, and
  // positive scalings of those). Explicit tables report false regardless of
  // content; callers needing certainty run check_deterministic_sybil_proof.
  bool structurally_monotone() const;

  // Accessors used by serialization; each requires the matching kind.
  const std::vector<double>& explicit_prices() const;
  const std::vector<double>& item_prices() const;
  double bundle_price() const;
  const std::vector<PricedSet>& cover_options() const;
  double scale_factor() const;
  const Pricing& scaled_inner() const;

 private:
  struct ExplicitData {
    std::vector<double> prices;
  };
  struct ItemData {
    std::vector<double> prices;
  };
  struct BundleData {
    double price;
  };
  struct CoverData {
    std::vector<PricedSet> options;
    mutable std::once_flag once;
    mutable std::vector<double> table;  // filled when n <= kTableMaxItems
  };
  struct ScaledData {
    double factor;
    std::shared_ptr<const Pricing> inner;
  };

  Pricing(ItemUniverse u, Kind kind) : universe_(u), kind_(kind) {}

  ItemUniverse universe_;
  Kind kind_;
  std::variant<ExplicitData, ItemData, BundleData,
               std::shared_ptr<CoverData>, ScaledData>
      data_;
};

// Monotone valuation over the subset lattice, v(empty) = 0, values >= 0.
class Valuation {
 public:
  enum class Kind { kExplicit, kAdditive, kSingleMinded, kUnitDemand };

  // Monotonicity of the table is checked exhaustively on construction.
  static Valuation explicit_table(ItemUniverse u, std::vector<double> values);
  static Valuation additive(ItemUniverse u, std::vector<double> item_values);
  static Valuation single_minded(ItemUniverse u, Mask set, double value);
  static Valuation unit_demand(ItemUniverse u, std::vector<double> item_values);

  double value(Mask s) const;
  Kind kind() const { return kind_; }
  const ItemUniverse& universe() const { return universe_; }
  int n() const { return universe_.n; }

  const std::vector<double>& explicit_values() const;
  const std::vector<double>& item_values() const;  // additive or unit-demand
  Mask single_minded_set() const;
  double single_minded_value() const;

 private:
  Valuation(ItemUniverse u, Kind kind) : universe_(u), kind_(kind) {}

  struct SingleMindedData {
    Mask set;
    double value;
  };

  ItemUniverse universe_;
  Kind kind_;
  std::variant<std::vector<double>, SingleMindedData> data_;
};

// Finite-support distribution over valuations sharing one universe.
class ValuationDistribution {
 public:
  using Entry = std::pair<double, Valuation>;

  ValuationDistribution(ItemUniverse u, std::vector<Entry> support);

  const std::vector<Entry>& support() const { return support_; }
  const ItemUniverse& universe() const { return universe_; }
  int n() const { return universe_.n; }

 private:
  ItemUniverse universe_;
  std::vector<Entry> support_;
};

struct CheckReport {
  bool monotone = true;
  bool subadditive = true;
  bool partial = false;  // some price is +infinity
  std::vector<std::pair<Mask, Mask>> monotone_witnesses;
  std::vector<std::pair<Mask, Mask>> subadditive_witnesses;

  bool sybil_proof() const { return monotone && subadditive; }
};

// Deterministic Sybil-proofness: p is Sybil-proof iff monotone and
// subadditive. Subadditivity is the pairwise scan over all (S, T); the
// pairwise condition implies the general cover condition by induction on the
// number of covering sets. Requires n <= 13 (the scan is O(4^n)).
CheckReport check_deterministic_sybil_proof(
    const Pricing& p, const ToleranceConfig& tol = {},
    std::size_t max_witnesses = 16);

// Buy-many closure of an option list: f(S) = cheapest total price of any
// collection of base options whose union covers S, computed by the subset DP
// f(S) = min over options (T,c) with T∩S != 0 of c + f(S \ T). Uncoverable
// sets map to +infinity. Requires n <= kTableMaxItems; for larger universes
// use Pricing::cover, which evaluates the same DP lazily per query.
Pricing buy_many_closure(const std::vector<PricedSet>& options,
                         ItemUniverse u);

// Additive extension: q({i}) = p({i}), q(S) = sum of singletons. Errors
// (naming the item) if p is infinite on some singleton.
Pricing additive_extension(const Pricing& p);

// Full 2^n table of prices/values (n <= kEnumMaxItems).
std::vector<double> price_table(const Pricing& p);
std::vector<double> value_table(const Valuation& v);

}  // namespace buymany

#endif  // BUYMANY_LATTICE_HPP_
