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

#include "buymany/json_io.hpp"

#include <cmath>

#include "buymany/experiments.hpp"
#include "buymany/rng.hpp"
#include "doctest.h"

using namespace buymany;

TEST_CASE("pricing documents round-trip across all forms") {
  Rng rng(31337);
  for (int trial = 0; trial < 100; ++trial) {
    ItemUniverse u(rng.uniform_int(1, 6));
    Pricing p = [&]() {
      switch (rng.uniform_int(0, 4)) {
        case 0: {
          std::vector<double> t(u.table_size(), 0.0);
          for (Mask s = 1; s < u.table_size(); ++s) {
            t[s] = rng.uniform_int(0, 64) / 8.0;
          }
          return Pricing::explicit_table(u, t);
        }
        case 1: {
          std::vector<double> q(u.n);
          for (double& x : q) x = rng.uniform_int(0, 64) / 8.0;
          return Pricing::item(u, q);
        }
        case 2:
          return Pricing::bundle(u, rng.uniform_int(0, 64) / 8.0);
        case 3: {
          std::vector<PricedSet> options;
          int count = rng.uniform_int(1, 5);
          for (int i = 0; i < count; ++i) {
            options.push_back({1 + rng.below(u.table_size() - 1),
                               rng.uniform_int(0, 64) / 8.0});
          }
          return Pricing::cover(u, options);
        }
        default:
          return Pricing::scaled(0.5, Pricing::bundle(u, 2.0));
      }
    }();
    std::string text = pricing_doc_to_json(p);
    Pricing back = pricing_doc_from_json(text);
    CHECK(back.kind() == p.kind());
    for (Mask s = 0; s < u.table_size(); ++s) {
      CHECK(back.price(s) == p.price(s));
    }
    CHECK(pricing_doc_to_json(back) == text);
  }
}

TEST_CASE("explicit pricing with infinities uses null") {
  Pricing f = buy_many_closure({{0b01, 1.0}}, ItemUniverse(2));
  std::string text = pricing_doc_to_json(f);
  CHECK(text.find("null") != std::string::npos);
  Pricing back = pricing_doc_from_json(text);
  CHECK(std::isinf(back.price(0b10)));
  CHECK(back.price(0b01) == 1.0);
}

TEST_CASE("distribution documents round-trip") {
  Rng rng(31338);
  for (int trial = 0; trial < 50; ++trial) {
    ItemUniverse u(rng.uniform_int(1, 5));
    Rng inner(rng.next_u64());
    ValuationDistribution d = random_distribution(u, 5, inner);
    ValuationDistribution back =
        distribution_doc_from_json(distribution_doc_to_json(d));
    REQUIRE(back.support().size() == d.support().size());
    for (std::size_t i = 0; i < d.support().size(); ++i) {
      CHECK(back.support()[i].first == d.support()[i].first);
      for (Mask s = 0; s < u.table_size(); ++s) {
        CHECK(back.support()[i].second.value(s) ==
              d.support()[i].second.value(s));
      }
    }
  }
}

TEST_CASE("valuation kinds survive the round trip") {
  ItemUniverse u(3);
  std::vector<ValuationDistribution::Entry> support;
  support.emplace_back(0.25, Valuation::additive(u, {1.0, 2.0, 3.0}));
  support.emplace_back(0.25, Valuation::single_minded(u, 0b101, 4.0));
  support.emplace_back(0.25, Valuation::unit_demand(u, {1.0, 2.0, 3.0}));
  support.emplace_back(
      0.25, Valuation::explicit_table(
                u, {0.0, 1.0, 1.0, 2.0, 1.0, 2.0, 2.0, 3.0}));
  ValuationDistribution d(u, std::move(support));
  ValuationDistribution back =
      distribution_doc_from_json(distribution_doc_to_json(d));
  CHECK(back.support()[0].second.kind() == Valuation::Kind::kAdditive);
  CHECK(back.support()[1].second.kind() == Valuation::Kind::kSingleMinded);
  CHECK(back.support()[1].second.single_minded_set() == 0b101);
  CHECK(back.support()[2].second.kind() == Valuation::Kind::kUnitDemand);
  CHECK(back.support()[3].second.kind() == Valuation::Kind::kExplicit);
}

TEST_CASE("instance and options documents") {
  ItemUniverse u(2);
  std::vector<ValuationDistribution::Entry> support;
  support.emplace_back(1.0, Valuation::single_minded(u, 0b11, 3.0));
  ValuationDistribution d(u, std::move(support));
  Pricing p = Pricing::item(u, {1.0, 1.5});
  auto [d2, p2] = instance_doc_from_json(instance_doc_to_json(d, p));
  CHECK(revenue(d2, p2) == revenue(d, p));

  std::vector<PricedSet> options{{0b01, 1.0}, {0b11, 2.5}};
  auto [opts, u2] = options_doc_from_json(options_doc_to_json(options, 2));
  REQUIRE(opts.size() == 2);
  CHECK(u2.n == 2);
  CHECK(opts[1].set == 0b11);
  CHECK(opts[1].price == 2.5);
}

TEST_CASE("menu documents round-trip") {
  ItemUniverse u(2);
  LotteryMenu menu(u, {{Lottery(u, {{0.5, 0b01}, {0.5, 0b00}}), 1.0},
                       {Lottery::point_mass(u, 0b11), 3.0}});
  LotteryMenu back = menu_doc_from_json(menu_doc_to_json(menu));
  REQUIRE(back.options().size() == 2);
  CHECK(back.options()[0].price == 1.0);
  CHECK(back.options()[0].lottery.outcomes()[0].second == 0b01);
  CHECK(back.options()[1].lottery.outcomes()[0].second == 0b11);
}

TEST_CASE("demand documents round-trip in both forms") {
  ItemUniverse u(3);
  DemandDistribution explicit_pi = DemandDistribution::explicit_support(
      u, {{0.25, 0b001}, {0.75, 0b110}});
  DemandDistribution back1 =
      demand_doc_from_json(demand_doc_to_json(explicit_pi));
  CHECK_FALSE(back1.is_product());
  CHECK(back1.atoms() == explicit_pi.atoms());

  DemandDistribution product =
      DemandDistribution::product_marginals(u, {0.1, 0.5, 0.9});
  DemandDistribution back2 = demand_doc_from_json(demand_doc_to_json(product));
  CHECK(back2.is_product());
  CHECK(back2.marginals() == product.marginals());
}

TEST_CASE("malformed documents raise validation errors") {
  CHECK_THROWS_AS(pricing_doc_from_json("{"), Error);
  CHECK_THROWS_AS(pricing_doc_from_json("{\"n\": 2}"), Error);
  CHECK_THROWS_AS(
      pricing_doc_from_json(
          "{\"n\": 2, \"pricing\": {\"kind\": \"mystery\"}}"),
      Error);
  CHECK_THROWS_AS(
      pricing_doc_from_json(
          "{\"n\": 2, \"pricing\": {\"kind\": \"item\", \"prices\": [1]}}"),
      Error);
  CHECK_THROWS_AS(
      pricing_doc_from_json("{\"n\": 0, \"pricing\": {\"kind\": \"bundle\", "
                            "\"price\": 1}}"),
      Error);
}
