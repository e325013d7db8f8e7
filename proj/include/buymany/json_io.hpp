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
// JSON schemas for pricings, valuations, distributions, demand
// distributions, lottery menus, and instances. Field names are fixed in
// docs/FORMATS.md and covered by round-trip tests. Subsets serialize as
// sorted 0-based item-index arrays; +infinity prices serialize as null.

#ifndef BUYMANY_JSON_IO_HPP_
#define BUYMANY_JSON_IO_HPP_

#include <string>
#include <utility>
#include <vector>

#include "buymany/demand.hpp"
#include "buymany/lattice.hpp"
#include "buymany/lottery.hpp"

namespace buymany {

// Serialize to canonical JSON text (2-space indent, sorted object keys as
// emitted by the writer; stable across runs).
std::string pricing_doc_to_json(const Pricing& p);
std::string distribution_doc_to_json(const ValuationDistribution& d);
std::string instance_doc_to_json(const ValuationDistribution& d,
                                 const Pricing& p);
std::string options_doc_to_json(const std::vector<PricedSet>& options, int n);
std::string menu_doc_to_json(const LotteryMenu& menu);
std::string demand_doc_to_json(const DemandDistribution& pi);

// Parse documents; malformed input throws validation errors.
Pricing pricing_doc_from_json(const std::string& text);
ValuationDistribution distribution_doc_from_json(const std::string& text);
std::pair<ValuationDistribution, Pricing> instance_doc_from_json(
    const std::string& text);
std::pair<std::vector<PricedSet>, ItemUniverse> options_doc_from_json(
    const std::string& text);
LotteryMenu menu_doc_from_json(const std::string& text);
DemandDistribution demand_doc_from_json(const std::string& text);

}  // namespace buymany

#endif  // BUYMANY_JSON_IO_HPP_
