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
#include <cmath>
#include <set>
#include <string>

#include "buymany/rng.hpp"

namespace buymany {
namespace {

constexpr double kLpEps = 1e-11;

}  // namespace

LpResult solve_lp_max(const std::vector<double>& c,
                      const std::vector<std::vector<double>>& a,
                      const std::vector<double>& b) {
  const int nvars = static_cast<int>(c.size());
  const int nrows = static_cast<int>(a.size());
  for (double bi : b) require(bi >= 0.0, "solve_lp_max needs b >= 0");

  // Tableau rows: nrows constraint rows + objective row. Columns: nvars
  // structural + nrows slack + rhs.
  const int ncols = nvars + nrows + 1;
  std::vector<std::vector<double>> t(nrows + 1, std::vector<double>(ncols, 0.0));
  std::vector<int> basis(nrows);
  for (int r = 0; r < nrows; ++r) {
    for (int j = 0; j < nvars; ++j) t[r][j] = a[r][j];
    t[r][nvars + r] = 1.0;
    t[r][ncols - 1] = b[r];
    basis[r] = nvars + r;
  }
  for (int j = 0; j < nvars; ++j) t[nrows][j] = -c[j];

  const int max_pivots = 2000 * (nrows + nvars + 1);
  for (int iter = 0; iter < max_pivots; ++iter) {
    // Bland: entering variable = lowest index with negative reduced cost.
    int enter = -1;
    for (int j = 0; j < ncols - 1; ++j) {
      if (t[nrows][j] < -kLpEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;  // optimal
    int leave = -1;
    double best_ratio = 0.0;
    for (int r = 0; r < nrows; ++r) {
      if (t[r][enter] > kLpEps) {
        double ratio = t[r][ncols - 1] / t[r][enter];
        if (leave < 0 || ratio < best_ratio - kLpEps ||
            (ratio < best_ratio + kLpEps && basis[r] < basis[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) {
      throw Error(ErrorKind::kValidation, "solve_lp_max: unbounded program");
    }
    double pivot = t[leave][enter];
    for (int j = 0; j < ncols; ++j) t[leave][j] /= pivot;
    for (int r = 0; r <= nrows; ++r) {
      if (r == leave) continue;
      double f = t[r][enter];
      if (f == 0.0) continue;
      for (int j = 0; j < ncols; ++j) t[r][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  LpResult out;
  out.x.assign(nvars, 0.0);
  for (int r = 0; r < nrows; ++r) {
    if (basis[r] < nvars) out.x[basis[r]] = std::max(0.0, t[r][ncols - 1]);
  }
  out.objective = 0.0;
  for (int j = 0; j < nvars; ++j) out.objective += c[j] * out.x[j];
  return out;
}

SimpleOptResult brev_exact(const ValuationDistribution& d,
                           const ToleranceConfig& tol) {
  tol.validate();
  const Mask full = d.universe().full_mask();
  std::vector<double> grand;
  grand.reserve(d.support().size());
  for (const auto& [w, v] : d.support()) grand.push_back(v.value(full));
  std::vector<double> candidates = grand;
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  double best_value = 0.0;
  double best_price = 0.0;
  bool have = false;
  for (double t : candidates) {
    if (t <= 0.0) continue;
    double pr = 0.0;
    for (std::size_t i = 0; i < grand.size(); ++i) {
      if (grand[i] >= t - tol.eps_tie) pr += d.support()[i].first;
    }
    double value = t * pr;
    if (!have || value > best_value + tol.eps_tie) {  // ties to the lowest t
      best_value = value;
      best_price = t;
      have = true;
    }
  }
  return SimpleOptResult{Pricing::bundle(d.universe(), best_price), best_value,
                         true};
}

SimpleOptResult srev_exact_singleminded(const ValuationDistribution& d,
                                        const ToleranceConfig& tol) {
  tol.validate();
  struct Buyer {
    double weight;
    Mask set;
    double value;
  };
  std::vector<Buyer> buyers;
  double max_value = 0.0;
  for (const auto& [w, v] : d.support()) {
    if (v.kind() != Valuation::Kind::kSingleMinded) {
      throw Error(ErrorKind::kValidation,
                  "srev_exact_singleminded: support contains a valuation that "
                  "is not single-minded");
    }
    max_value = std::max(max_value, v.single_minded_value());
    if (v.single_minded_set() != 0 && v.single_minded_value() > 0.0) {
      buyers.push_back({w, v.single_minded_set(), v.single_minded_value()});
    }
  }
  if (buyers.size() > 14) {
    throw Error(ErrorKind::kValidation,
                "srev_exact_singleminded enumerates 2^|support| serve sets; "
                "support limit is 14 - use srev_grid instead");
  }

  const int n = d.n();
  require(n <= kMaxItems, "universe too large");
  double best_value = 0.0;
  std::vector<double> best_q(n, 0.0);
  const std::size_t nsub = std::size_t{1} << buyers.size();
  for (std::size_t serve = 0; serve < nsub; ++serve) {
    // Compress to the items covered by the served buyers.
    Mask covered = 0;
    for (std::size_t j = 0; j < buyers.size(); ++j) {
      if (serve & (std::size_t{1} << j)) covered |= buyers[j].set;
    }
    if (covered == 0) continue;
    std::vector<int> items = mask_to_items(covered);
    std::vector<int> local(kMaxItems, -1);
    for (std::size_t k = 0; k < items.size(); ++k) local[items[k]] = k;

    std::vector<double> c(items.size(), 0.0);
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    for (std::size_t j = 0; j < buyers.size(); ++j) {
      if (!(serve & (std::size_t{1} << j))) continue;
      std::vector<double> row(items.size(), 0.0);
      for (int i : mask_to_items(buyers[j].set)) {
        row[local[i]] = 1.0;
        c[local[i]] += buyers[j].weight;
      }
      rows.push_back(std::move(row));
      rhs.push_back(buyers[j].value);
    }
    LpResult lp = solve_lp_max(c, rows, rhs);
    if (lp.objective > best_value + 1e-12) {
      best_value = lp.objective;
      // Items outside the served cover get a prohibitive finite price so the
      // returned pricing's revenue matches the LP objective.
      std::fill(best_q.begin(), best_q.end(), max_value + 1.0);
      for (std::size_t k = 0; k < items.size(); ++k) best_q[items[k]] = lp.x[k];
    }
  }
  if (best_value == 0.0) std::fill(best_q.begin(), best_q.end(), 0.0);
  return SimpleOptResult{Pricing::item(d.universe(), best_q), best_value, true};
}

SimpleOptResult srev_grid(const ValuationDistribution& d, int levels_per_item,
                          std::uint64_t seed, const ToleranceConfig& tol) {
  tol.validate();
  require(levels_per_item >= 1, "levels_per_item must be >= 1");
  const int n = d.n();

  // Candidate price levels from observed value levels v(S)/|S| plus 0. For
  // structured forms those ratios reduce to the closed sets below; explicit
  // tables are scanned in full.
  std::set<double> level_set;
  level_set.insert(0.0);
  for (const auto& [w, v] : d.support()) {
    switch (v.kind()) {
      case Valuation::Kind::kAdditive:
      case Valuation::Kind::kUnitDemand:
        for (double x : v.item_values()) {
          if (x > 0.0) level_set.insert(x);
        }
        break;
      case Valuation::Kind::kSingleMinded: {
        double w2 = v.single_minded_value();
        Mask s = v.single_minded_set();
        if (w2 > 0.0 && s != 0) {
          level_set.insert(w2);
          level_set.insert(w2 / popcount(s));
        }
        break;
      }
      case Valuation::Kind::kExplicit: {
        const std::size_t size = std::size_t{1} << n;
        for (Mask s = 1; s < size; ++s) {
          double x = v.value(s) / popcount(s);
          if (x > 0.0) level_set.insert(x);
        }
        break;
      }
    }
  }
  std::vector<double> levels(level_set.begin(), level_set.end());
  if (static_cast<int>(levels.size()) > levels_per_item) {
    std::vector<double> thin;
    thin.reserve(levels_per_item);
    for (int k = 0; k < levels_per_item; ++k) {
      std::size_t idx = (levels.size() - 1) * k / (levels_per_item - 1 > 0
                                                       ? levels_per_item - 1
                                                       : 1);
      thin.push_back(levels[idx]);
    }
    thin.erase(std::unique(thin.begin(), thin.end()), thin.end());
    levels = std::move(thin);
  }

  auto evaluate = [&](const std::vector<double>& q) {
    return revenue(d, Pricing::item(d.universe(), q), tol);
  };

  const int restarts = 8;
  const int max_rounds = 64;
  std::vector<double> best_q(n, 0.0);
  double best_value = evaluate(best_q);
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    std::vector<double> q(n);
    if (r == 0) {
      std::fill(q.begin(), q.end(), 0.0);
    } else {
      for (int i = 0; i < n; ++i) {
        q[i] = levels[rng.below(levels.size())];
      }
    }
    double value = evaluate(q);
    for (int round = 0; round < max_rounds; ++round) {
      bool improved = false;
      for (int i = 0; i < n; ++i) {
        double keep = q[i];
        double local_best = value;
        double local_arg = keep;
        for (double lv : levels) {
          if (lv == keep) continue;
          q[i] = lv;
          double cand = evaluate(q);
          if (cand > local_best + 1e-12) {
            local_best = cand;
            local_arg = lv;
          }
        }
        q[i] = local_arg;
        if (local_best > value + 1e-12) {
          value = local_best;
          improved = true;
        }
      }
      if (!improved) break;
    }
    if (value > best_value + 1e-12 ||
        (std::abs(value - best_value) <= 1e-12 &&
         std::lexicographical_compare(q.begin(), q.end(), best_q.begin(),
                                      best_q.end()))) {
      best_value = value;
      best_q = q;
    }
  }
  return SimpleOptResult{Pricing::item(d.universe(), best_q), best_value,
                         false};
}

}  // namespace buymany
