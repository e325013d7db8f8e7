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

#ifndef BUYMANY_COMMON_HPP_
#define BUYMANY_COMMON_HPP_

#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace buymany {

// Item subsets are bitsets over item indices 0..n-1.
using Mask = std::uint64_t;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Structural limit on universe size (bitset in a uint64). Operations that
// enumerate the full 2^n lattice are further gated by kEnumMaxItems.
inline constexpr int kMaxItems = 63;
inline constexpr int kEnumMaxItems = 22;
// Full 2^n tables (explicit pricings/valuations, closure memoization).
inline constexpr int kTableMaxItems = 20;

enum class ErrorKind {
  kValidation,  // bad input, precondition violated (CLI exit 2)
  kAssertion,   // a paper inequality violated beyond tolerance (CLI exit 3)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::kValidation, what);
}

struct ItemUniverse {
  int n = 0;

  ItemUniverse() = default;
  explicit ItemUniverse(int n_items) : n(n_items) {
    require(n >= 1 && n <= kMaxItems,
            "item count must be in [1, " + std::to_string(kMaxItems) +
                "], got " + std::to_string(n));
  }

  Mask full_mask() const { return (n == 64) ? ~Mask{0} : ((Mask{1} << n) - 1); }
  std::size_t table_size() const { return std::size_t{1} << n; }
  bool operator==(const ItemUniverse&) const = default;
};

inline int popcount(Mask s) { return std::popcount(s); }

inline bool is_subset(Mask a, Mask b) { return (a & ~b) == 0; }

// Items of a mask as sorted indices.
inline std::vector<int> mask_to_items(Mask s) {
  std::vector<int> items;
  while (s) {
    items.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return items;
}

inline Mask items_to_mask(const std::vector<int>& items, int n) {
  Mask s = 0;
  for (int i : items) {
    require(i >= 0 && i < n, "item index " + std::to_string(i) +
                                 " out of range for n=" + std::to_string(n));
    s |= Mask{1} << i;
  }
  return s;
}

struct ToleranceConfig {
  double eps_price = 1e-9;
  double eps_tie = 1e-9;
  double eps_report = 1e-6;

  void validate() const {
    require(eps_price > 0 && eps_tie > 0 && eps_report > 0,
            "tolerances must be strictly positive");
  }
};

}  // namespace buymany

#endif  // BUYMANY_COMMON_HPP_
