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

#include "json.hpp"

namespace buymany {
namespace {

using nlohmann::json;

json set_to_json(Mask s) {
  json arr = json::array();
  for (int i : mask_to_items(s)) arr.push_back(i);
  return arr;
}

Mask set_from_json(const json& j, int n) {
  require(j.is_array(), "subset must be an array of item indices");
  std::vector<int> items;
  for (const auto& e : j) {
    require(e.is_number_integer(), "item indices must be integers");
    items.push_back(e.get<int>());
  }
  return items_to_mask(items, n);
}

double number_from_json(const json& j, const char* what) {
  require(j.is_number(), std::string(what) + " must be a number");
  return j.get<double>();
}

json pricing_to_json_inner(const Pricing& p) {
  json j;
  switch (p.kind()) {
    case Pricing::Kind::kExplicit: {
      j["kind"] = "explicit";
      json arr = json::array();
      for (double x : p.explicit_prices()) {
        if (std::isinf(x)) {
          arr.push_back(nullptr);
        } else {
          arr.push_back(x);
        }
      }
      j["prices"] = std::move(arr);
      break;
    }
    case Pricing::Kind::kItem:
      j["kind"] = "item";
      j["prices"] = p.item_prices();
      break;
    case Pricing::Kind::kBundle:
      j["kind"] = "bundle";
      j["price"] = p.bundle_price();
      break;
    case Pricing::Kind::kCover: {
      j["kind"] = "cover";
      json arr = json::array();
      for (const auto& opt : p.cover_options()) {
        arr.push_back({{"set", set_to_json(opt.set)}, {"price", opt.price}});
      }
      j["options"] = std::move(arr);
      break;
    }
    case Pricing::Kind::kScaled:
      j["kind"] = "scaled";
      j["factor"] = p.scale_factor();
      j["inner"] = pricing_to_json_inner(p.scaled_inner());
      break;
  }
  return j;
}

Pricing pricing_from_json_inner(const json& j, ItemUniverse u) {
  require(j.is_object() && j.contains("kind") && j["kind"].is_string(),
          "pricing needs a string 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "explicit") {
    require(j.contains("prices") && j["prices"].is_array(),
            "explicit pricing needs a 'prices' array");
    std::vector<double> prices;
    prices.reserve(j["prices"].size());
    for (const auto& e : j["prices"]) {
      if (e.is_null()) {
        prices.push_back(kInf);
      } else {
        prices.push_back(number_from_json(e, "price"));
      }
    }
    return Pricing::explicit_table(u, std::move(prices));
  }
  if (kind == "item") {
    require(j.contains("prices") && j["prices"].is_array(),
            "item pricing needs a 'prices' array");
    std::vector<double> prices;
    for (const auto& e : j["prices"]) {
      prices.push_back(number_from_json(e, "price"));
    }
    return Pricing::item(u, std::move(prices));
  }
  if (kind == "bundle") {
    require(j.contains("price"), "bundle pricing needs a 'price'");
    return Pricing::bundle(u, number_from_json(j["price"], "price"));
  }
  if (kind == "cover") {
    require(j.contains("options") && j["options"].is_array(),
            "cover pricing needs an 'options' array");
    std::vector<PricedSet> options;
    for (const auto& e : j["options"]) {
      require(e.is_object() && e.contains("set") && e.contains("price"),
              "cover option needs 'set' and 'price'");
      options.push_back({set_from_json(e["set"], u.n),
                         number_from_json(e["price"], "price")});
    }
    return Pricing::cover(u, std::move(options));
  }
  if (kind == "scaled") {
    require(j.contains("factor") && j.contains("inner"),
            "scaled pricing needs 'factor' and 'inner'");
    return Pricing::scaled(number_from_json(j["factor"], "factor"),
                           pricing_from_json_inner(j["inner"], u));
  }
  throw Error(ErrorKind::kValidation, "unknown pricing kind '" + kind + "'");
}

json valuation_to_json(const Valuation& v) {
  json j;
  switch (v.kind()) {
    case Valuation::Kind::kExplicit:
      j["kind"] = "explicit";
      j["values"] = v.explicit_values();
      break;
    case Valuation::Kind::kAdditive:
      j["kind"] = "additive";
      j["values"] = v.item_values();
      break;
    case Valuation::Kind::kSingleMinded:
      j["kind"] = "single_minded";
      j["set"] = set_to_json(v.single_minded_set());
      j["value"] = v.single_minded_value();
      break;
    case Valuation::Kind::kUnitDemand:
      j["kind"] = "unit_demand";
      j["values"] = v.item_values();
      break;
  }
  return j;
}

Valuation valuation_from_json(const json& j, ItemUniverse u) {
  require(j.is_object() && j.contains("kind") && j["kind"].is_string(),
          "valuation needs a string 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  auto values_of = [&](const char* field) {
    require(j.contains(field) && j[field].is_array(),
            "valuation needs a '" + std::string(field) + "' array");
    std::vector<double> values;
    for (const auto& e : j[field]) {
      values.push_back(number_from_json(e, "value"));
    }
    return values;
  };
  if (kind == "explicit") return Valuation::explicit_table(u, values_of("values"));
  if (kind == "additive") return Valuation::additive(u, values_of("values"));
  if (kind == "unit_demand") {
    return Valuation::unit_demand(u, values_of("values"));
  }
  if (kind == "single_minded") {
    require(j.contains("set") && j.contains("value"),
            "single-minded valuation needs 'set' and 'value'");
    return Valuation::single_minded(u, set_from_json(j["set"], u.n),
                                    number_from_json(j["value"], "value"));
  }
  throw Error(ErrorKind::kValidation, "unknown valuation kind '" + kind + "'");
}

json distribution_to_json(const ValuationDistribution& d) {
  json arr = json::array();
  for (const auto& [w, v] : d.support()) {
    arr.push_back({{"weight", w}, {"valuation", valuation_to_json(v)}});
  }
  return arr;
}

ValuationDistribution distribution_from_json(const json& j, ItemUniverse u) {
  require(j.is_array(), "'support' must be an array");
  std::vector<ValuationDistribution::Entry> support;
  for (const auto& e : j) {
    require(e.is_object() && e.contains("weight") && e.contains("valuation"),
            "support entry needs 'weight' and 'valuation'");
    support.emplace_back(number_from_json(e["weight"], "weight"),
                         valuation_from_json(e["valuation"], u));
  }
  return ValuationDistribution(u, std::move(support));
}

ItemUniverse universe_from_doc(const json& j) {
  require(j.is_object() && j.contains("n") && j["n"].is_number_integer(),
          "document needs an integer 'n'");
  return ItemUniverse(j["n"].get<int>());
}

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw Error(ErrorKind::kValidation, "malformed JSON input");
  }
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string pricing_doc_to_json(const Pricing& p) {
  return dump({{"n", p.n()}, {"pricing", pricing_to_json_inner(p)}});
}

std::string distribution_doc_to_json(const ValuationDistribution& d) {
  return dump({{"n", d.n()}, {"support", distribution_to_json(d)}});
}

std::string instance_doc_to_json(const ValuationDistribution& d,
                                 const Pricing& p) {
  require(d.universe() == p.universe(), "instance universes must match");
  return dump({{"n", d.n()},
               {"pricing", pricing_to_json_inner(p)},
               {"support", distribution_to_json(d)}});
}

std::string options_doc_to_json(const std::vector<PricedSet>& options, int n) {
  json arr = json::array();
  for (const auto& opt : options) {
    arr.push_back({{"set", set_to_json(opt.set)}, {"price", opt.price}});
  }
  return dump({{"n", n}, {"options", std::move(arr)}});
}

std::string menu_doc_to_json(const LotteryMenu& menu) {
  json arr = json::array();
  for (const auto& opt : menu.options()) {
    json outcomes = json::array();
    for (const auto& [p, s] : opt.lottery.outcomes()) {
      outcomes.push_back({{"p", p}, {"set", set_to_json(s)}});
    }
    arr.push_back({{"price", opt.price}, {"outcomes", std::move(outcomes)}});
  }
  return dump({{"n", menu.n()}, {"options", std::move(arr)}});
}

std::string demand_doc_to_json(const DemandDistribution& pi) {
  json inner;
  if (pi.is_product()) {
    inner["kind"] = "marginals";
    inner["pi"] = pi.marginals();
  } else {
    inner["kind"] = "explicit";
    json arr = json::array();
    for (const auto& [w, s] : pi.atoms()) {
      arr.push_back({{"p", w}, {"set", set_to_json(s)}});
    }
    inner["support"] = std::move(arr);
  }
  return dump({{"n", pi.n()}, {"demand", std::move(inner)}});
}

Pricing pricing_doc_from_json(const std::string& text) {
  json j = parse_text(text);
  ItemUniverse u = universe_from_doc(j);
  require(j.contains("pricing"), "pricing document needs 'pricing'");
  return pricing_from_json_inner(j["pricing"], u);
}

ValuationDistribution distribution_doc_from_json(const std::string& text) {
  json j = parse_text(text);
  ItemUniverse u = universe_from_doc(j);
  require(j.contains("support"), "distribution document needs 'support'");
  return distribution_from_json(j["support"], u);
}

std::pair<ValuationDistribution, Pricing> instance_doc_from_json(
    const std::string& text) {
  json j = parse_text(text);
  ItemUniverse u = universe_from_doc(j);
  require(j.contains("support") && j.contains("pricing"),
          "instance document needs 'support' and 'pricing'");
  return {distribution_from_json(j["support"], u),
          pricing_from_json_inner(j["pricing"], u)};
}

std::pair<std::vector<PricedSet>, ItemUniverse> options_doc_from_json(
    const std::string& text) {
  json j = parse_text(text);
  ItemUniverse u = universe_from_doc(j);
  require(j.contains("options") && j["options"].is_array(),
          "options document needs an 'options' array");
  std::vector<PricedSet> options;
  for (const auto& e : j["options"]) {
    require(e.is_object() && e.contains("set") && e.contains("price"),
            "option needs 'set' and 'price'");
    options.push_back(
        {set_from_json(e["set"], u.n), number_from_json(e["price"], "price")});
  }
  return {std::move(options), u};
}

LotteryMenu menu_doc_from_json(const std::string& text) {
  json j = parse_text(text);
  ItemUniverse u = universe_from_doc(j);
  require(j.contains("options") && j["options"].is_array(),
          "menu document needs an 'options' array");
  std::vector<LotteryOption> options;
  for (const auto& e : j["options"]) {
    require(e.is_object() && e.contains("price") && e.contains("outcomes") &&
                e["outcomes"].is_array(),
            "menu option needs 'price' and 'outcomes'");
    std::vector<Lottery::Outcome> outcomes;
    for (const auto& o : e["outcomes"]) {
      require(o.is_object() && o.contains("p") && o.contains("set"),
              "outcome needs 'p' and 'set'");
      outcomes.emplace_back(number_from_json(o["p"], "probability"),
                            set_from_json(o["set"], u.n));
    }
    options.push_back({Lottery(u, std::move(outcomes)),
                       number_from_json(e["price"], "price")});
  }
  return LotteryMenu(u, std::move(options));
}

DemandDistribution demand_doc_from_json(const std::string& text) {
  json j = parse_text(text);
  ItemUniverse u = universe_from_doc(j);
  require(j.contains("demand") && j["demand"].is_object(),
          "demand document needs a 'demand' object");
  const json& inner = j["demand"];
  require(inner.contains("kind") && inner["kind"].is_string(),
          "demand needs a string 'kind'");
  const std::string kind = inner["kind"].get<std::string>();
  if (kind == "marginals") {
    require(inner.contains("pi") && inner["pi"].is_array(),
            "marginal demand needs a 'pi' array");
    std::vector<double> pi;
    for (const auto& e : inner["pi"]) {
      pi.push_back(number_from_json(e, "marginal"));
    }
    return DemandDistribution::product_marginals(u, std::move(pi));
  }
  if (kind == "explicit") {
    require(inner.contains("support") && inner["support"].is_array(),
            "explicit demand needs a 'support' array");
    std::vector<DemandDistribution::Atom> atoms;
    for (const auto& e : inner["support"]) {
      require(e.is_object() && e.contains("p") && e.contains("set"),
              "demand atom needs 'p' and 'set'");
      atoms.emplace_back(number_from_json(e["p"], "probability"),
                         set_from_json(e["set"], u.n));
    }
    return DemandDistribution::explicit_support(u, std::move(atoms));
  }
  throw Error(ErrorKind::kValidation, "unknown demand kind '" + kind + "'");
}

}  // namespace buymany
