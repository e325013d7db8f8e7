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

#include "buymany/simple_opt.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include "buymany/rng.hpp"
#include "doctest.h"

using namespace buymany;

namespace {

ValuationDistribution single_minded_support(
    ItemUniverse u, const std::vector<std::tuple<double, Mask, double>>& rows) {
  std::vector<ValuationDistribution::Entry> support;
  for (const auto& [w, s, v] : rows) {
    support.emplace_back(w, Valuation::single_minded(u, s, v));
  }
  return ValuationDistribution(u, std::move(support));
}

ValuationDistribution grand_values(const std::vector<double>& weights,
                                   const std::vector<double>& values) {
  ItemUniverse u(1);
  std::vector<ValuationDistribution::Entry> support;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    support.emplace_back(weights[i],
                         Valuation::single_minded(u, 0b1, values[i]));
  }
  return ValuationDistribution(u, std::move(support));
}

// Brute-force SRev oracle by vertex enumeration, independent of the simplex
// path: for every serve set, every choice of |items| active constraints
// (buyer rows or q_i = 0 planes) is solved as a linear system and checked
// for feasibility. Exponential; supports <= 6, n <= 3.
double srev_brute(const ValuationDistribution& d) {
  const int n = d.n();
  struct Buyer {
    double weight;
    Mask set;
    double value;
  };
  std::vector<Buyer> buyers;
  for (const auto& [w, v] : d.support()) {
    buyers.push_back({w, v.single_minded_set(), v.single_minded_value()});
  }
  const int rows = static_cast<int>(buyers.size());
  double best = 0.0;
  // Active-set enumeration: pick n constraints among the `rows` buyer
  // constraints and the n nonnegativity planes, solve, evaluate revenue.
  std::vector<int> pick(n);
  std::function<void(int, int)> recurse = [&](int depth, int from) {
    if (depth == n) {
      // Build and solve the n x n system by Gaussian elimination.
      std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
      for (int r = 0; r < n; ++r) {
        int c = pick[r];
        if (c < rows) {
          for (int i : mask_to_items(buyers[c].set)) a[r][i] = 1.0;
          a[r][n] = buyers[c].value;
        } else {
          a[r][c - rows] = 1.0;
          a[r][n] = 0.0;
        }
      }
      for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r) {
          if (std::abs(a[r][col]) > 1e-9) {
            piv = r;
            break;
          }
        }
        if (piv < 0) return;  // singular active set
        std::swap(a[col], a[piv]);
        for (int r = 0; r < n; ++r) {
          if (r == col) continue;
          double f = a[r][col] / a[col][col];
          for (int cc = col; cc <= n; ++cc) a[r][cc] -= f * a[col][cc];
        }
      }
      std::vector<double> q(n);
      for (int i = 0; i < n; ++i) q[i] = a[i][n] / a[i][i];
      for (double x : q) {
        if (!(x >= -1e-9)) return;
      }
      for (double& x : q) x = std::max(0.0, x);
      best = std::max(best, revenue(d, Pricing::item(d.universe(), q)));
      return;
    }
    for (int c = from; c < rows + n; ++c) {
      pick[depth] = c;
      recurse(depth + 1, c + 1);
    }
  };
  recurse(0, 0);
  // The all-zero pricing is always a vertex candidate.
  best = std::max(best, 0.0);
  return best;
}

}  // namespace

TEST_CASE("brev on a two-point equal split ties to the lower price") {
  SimpleOptResult r = brev_exact(grand_values({0.5, 0.5}, {1.0, 2.0}));
  CHECK(r.value == doctest::Approx(1.0));
  CHECK(r.best_pricing.bundle_price() == 1.0);
  CHECK(r.exact);
}

TEST_CASE("brev on a point mass extracts the value") {
  SimpleOptResult r = brev_exact(grand_values({1.0}, {5.0}));
  CHECK(r.value == doctest::Approx(5.0));
  CHECK(r.best_pricing.bundle_price() == 5.0);
}

TEST_CASE("brev on an equal-revenue support") {
  SimpleOptResult r =
      brev_exact(grand_values({0.5, 0.25, 0.25}, {1.0, 2.0, 4.0}));
  CHECK(r.value == doctest::Approx(1.0));
  CHECK(r.best_pricing.bundle_price() == 1.0);
}

TEST_CASE("brev agrees with a dense grid scan") {
  Rng rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    int types = rng.uniform_int(1, 8);
    std::vector<double> w(types), v(types);
    double total = 0.0;
    for (int i = 0; i < types; ++i) {
      w[i] = rng.uniform_int(1, 8);
      total += w[i];
      v[i] = static_cast<double>(rng.uniform_int(1, 64)) / 8.0;
    }
    for (double& x : w) x /= total;
    ValuationDistribution d = grand_values(w, v);
    SimpleOptResult r = brev_exact(d);
    double best = 0.0;
    for (int k = 1; k <= 512; ++k) {
      double t = k / 64.0;
      best = std::max(best, revenue(d, Pricing::bundle(d.universe(), t)));
    }
    CHECK(r.value >= best - 1e-9);
    CHECK(r.value ==
          doctest::Approx(revenue(d, r.best_pricing)).epsilon(1e-9));
  }
}

TEST_CASE("srev LP solves the two-buyer chain by hand") {
  ItemUniverse u(2);
  ValuationDistribution d = single_minded_support(
      u, {{0.5, 0b01, 1.0}, {0.5, 0b11, 3.0}});
  SimpleOptResult r = srev_exact_singleminded(d);
  CHECK(r.value == doctest::Approx(2.0));
  CHECK(r.exact);
  CHECK(revenue(d, r.best_pricing) == doctest::Approx(2.0));
}

TEST_CASE("srev of a single buyer extracts the value") {
  ItemUniverse u(1);
  ValuationDistribution d = single_minded_support(u, {{1.0, 0b1, 4.0}});
  CHECK(srev_exact_singleminded(d).value == doctest::Approx(4.0));
}

TEST_CASE("srev on disjoint singletons is separable") {
  ItemUniverse u(2);
  ValuationDistribution d = single_minded_support(
      u, {{0.5, 0b01, 2.0}, {0.5, 0b10, 3.0}});
  SimpleOptResult r = srev_exact_singleminded(d);
  CHECK(r.value == doctest::Approx(2.5));
  CHECK(r.best_pricing.item_prices()[0] == doctest::Approx(2.0));
  CHECK(r.best_pricing.item_prices()[1] == doctest::Approx(3.0));
}

TEST_CASE("srev rejects non-single-minded supports and large supports") {
  ItemUniverse u(2);
  std::vector<ValuationDistribution::Entry> support;
  support.emplace_back(1.0, Valuation::additive(u, {1.0, 1.0}));
  CHECK_THROWS_AS(srev_exact_singleminded(ValuationDistribution(u, support)),
                  Error);
}

TEST_CASE("srev matches the pairwise-difference brute force") {
  Rng rng(45);
  for (int trial = 0; trial < 60; ++trial) {
    ItemUniverse u(rng.uniform_int(2, 3));
    int types = rng.uniform_int(1, 6);
    std::vector<std::tuple<double, Mask, double>> rows;
    std::vector<double> w(types);
    double total = 0.0;
    for (int i = 0; i < types; ++i) {
      w[i] = rng.uniform_int(1, 8);
      total += w[i];
    }
    for (int i = 0; i < types; ++i) {
      rows.emplace_back(w[i] / total, 1 + rng.below(u.table_size() - 1),
                        static_cast<double>(rng.uniform_int(1, 32)) / 4.0);
    }
    ValuationDistribution d = single_minded_support(u, rows);
    SimpleOptResult r = srev_exact_singleminded(d);
    CHECK(r.value == doctest::Approx(srev_brute(d)).epsilon(1e-6));
    CHECK(r.value == doctest::Approx(revenue(d, r.best_pricing)).epsilon(1e-9));
  }
}

TEST_CASE("optimal simple pricings are Sybil-proof") {
  ItemUniverse u(3);
  ValuationDistribution d = single_minded_support(
      u, {{0.25, 0b001, 2.0}, {0.25, 0b011, 3.0}, {0.5, 0b110, 1.5}});
  CheckReport item_check =
      check_deterministic_sybil_proof(srev_exact_singleminded(d).best_pricing);
  CHECK(item_check.sybil_proof());
  CheckReport bundle_check =
      check_deterministic_sybil_proof(brev_exact(d).best_pricing);
  CHECK(bundle_check.sybil_proof());
}

TEST_CASE("grid heuristic stays below the exact optimum and finds additives") {
  ItemUniverse u(2);
  ValuationDistribution d = single_minded_support(
      u, {{0.5, 0b01, 1.0}, {0.5, 0b11, 3.0}});
  SimpleOptResult exact = srev_exact_singleminded(d);
  SimpleOptResult grid = srev_grid(d, 32, 0);
  CHECK_FALSE(grid.exact);
  CHECK(grid.value <= exact.value + 1e-9);

  std::vector<ValuationDistribution::Entry> support;
  support.emplace_back(1.0, Valuation::additive(u, {1.0, 1.0}));
  ValuationDistribution additive(u, std::move(support));
  CHECK(srev_grid(additive, 32, 0).value == doctest::Approx(2.0));

  std::vector<ValuationDistribution::Entry> zeros;
  zeros.emplace_back(1.0, Valuation::additive(u, {0.0, 0.0}));
  CHECK(srev_grid(ValuationDistribution(u, std::move(zeros)), 8, 0).value ==
        0.0);
}

TEST_CASE("lp solver handles degenerate and unbounded-free cases") {
  // max x + y st x <= 1, y <= 2.
  LpResult r = solve_lp_max({1.0, 1.0}, {{1.0, 0.0}, {0.0, 1.0}}, {1.0, 2.0});
  CHECK(r.objective == doctest::Approx(3.0));
  // Degenerate rhs.
  LpResult z = solve_lp_max({1.0}, {{1.0}}, {0.0});
  CHECK(z.objective == doctest::Approx(0.0));
}
