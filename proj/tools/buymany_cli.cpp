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

// Batch front end over the buymany C API. Exit codes: 0 success, 2 input or
// precondition error, 3 a checked inequality failed beyond tolerance.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "buymany.h"

namespace {

int finish(bm_status status, char* csv, char* err, const std::string& out_path) {
  if (status != BM_OK) {
    std::cerr << "error: " << (err != nullptr ? err : "unknown") << "\n";
    bm_string_free(err);
    bm_string_free(csv);
    return status == BM_ERROR_ASSERTION ? 3 : 2;
  }
  if (csv != nullptr) {
    if (out_path.empty()) {
      std::fwrite(csv, 1, std::string(csv).size(), stdout);
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot open " << out_path << "\n";
        bm_string_free(csv);
        return 2;
      }
      out << csv;
    }
    bm_string_free(csv);
  }
  return 0;
}

bool read_file(const std::string& path, std::string* out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  *out = buf.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"buymany: single-buyer multi-item pricing workbench"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "write CSV here instead of stdout");

  std::string input_path;
  std::string target;
  double lo = 0.0, hi = 0.0;
  int a_max = 64;
  std::uint64_t seed = 0;
  int threads = 0;
  int lb_n = 48, num_sets = 24, set_size = 6, max_overlap = 1, m = 6,
      b_min = 4, lb_samples = 200;
  int ct_n = 10, ct_samples = 100;
  int hn_n = 2;

  CLI::App* verify = app.add_subcommand("verify", "Sybil-proofness report");
  verify->add_option("pricing", input_path, "pricing JSON file")->required();

  CLI::App* closure = app.add_subcommand("closure", "buy-many closure table");
  closure->add_option("options", input_path, "options JSON file")->required();

  CLI::App* revenue = app.add_subcommand("revenue", "Rev / SRev / BRev");
  revenue->add_option("instance", input_path, "instance JSON file")->required();
  revenue->add_option("--seed", seed, "root seed for the grid heuristic");

  CLI::App* scale = app.add_subcommand("scale", "scaled-pricing bound reports");
  scale->add_option("instance", input_path, "instance JSON file")->required();
  scale->add_option("--lo", lo, "scaling range lower end (default 1/(2c))");
  scale->add_option("--hi", hi, "scaling range upper end (default 1)");
  scale->add_option("--a-max", a_max, "exponent cap for the uniform pricings");

  CLI::App* lottery = app.add_subcommand("lottery", "menu floors and costs");
  lottery->add_option("menu", input_path, "menu JSON file")->required();
  lottery->add_option("--target", target, "comma-separated item indices")
      ->required();

  CLI::App* lowerbound =
      app.add_subcommand("lowerbound", "hard single-minded family report");
  lowerbound->add_option("--n", lb_n, "ground size");
  lowerbound->add_option("--N", num_sets, "number of sets");
  lowerbound->add_option("--d", set_size, "set size");
  lowerbound->add_option("--t", max_overlap, "max pairwise intersection");
  lowerbound->add_option("--m", m, "value levels");
  lowerbound->add_option("--bmin", b_min, "base value");
  lowerbound->add_option("--samples", lb_samples, "beta samples");
  lowerbound->add_option("--seed", seed, "root seed");
  lowerbound->add_option("--threads", threads, "worker threads (0 = cores)");

  CLI::App* coretail =
      app.add_subcommand("coretail", "core-tail decomposition report");
  coretail->add_option("--n", ct_n, "item count");
  coretail->add_option("--samples", ct_samples, "random instances");
  coretail->add_option("--seed", seed, "root seed");
  coretail->add_option("--threads", threads, "worker threads (0 = cores)");

  CLI::App* hartnisan =
      app.add_subcommand("hartnisan", "gap table for the intro family");
  hartnisan->add_option("--n", hn_n, "item count (2..8)")->required();
  hartnisan->add_option("--seed", seed, "root seed for the grid heuristic");

  CLI11_PARSE(app, argc, argv);

  char* csv = nullptr;
  char* err = nullptr;
  bm_status status = BM_OK;

  auto with_file = [&](auto&& fn) {
    std::string text;
    if (!read_file(input_path, &text)) {
      std::cerr << "error: cannot read " << input_path << "\n";
      return 2;
    }
    status = fn(text);
    return finish(status, csv, err, out_path);
  };

  if (verify->parsed()) {
    return with_file([&](const std::string& text) {
      return bm_run_verify(text.c_str(), &csv, &err);
    });
  }
  if (closure->parsed()) {
    return with_file([&](const std::string& text) {
      return bm_run_closure(text.c_str(), &csv, &err);
    });
  }
  if (revenue->parsed()) {
    return with_file([&](const std::string& text) {
      return bm_run_revenue(text.c_str(), seed, &csv, &err);
    });
  }
  if (scale->parsed()) {
    return with_file([&](const std::string& text) {
      return bm_run_scale(text.c_str(), lo, hi, a_max, &csv, &err);
    });
  }
  if (lottery->parsed()) {
    return with_file([&](const std::string& text) {
      return bm_run_lottery(text.c_str(), target.c_str(), &csv, &err);
    });
  }
  if (lowerbound->parsed()) {
    std::uint64_t resamples = 0;
    status =
        bm_run_lowerbound(lb_n, num_sets, set_size, max_overlap, m, b_min,
                          lb_samples, seed, threads, &resamples, &csv, &err);
    if (status == BM_OK && resamples > 0) {
      std::cerr << "note: " << resamples
                << " beta draws rejected to preserve the revenue identity\n";
    }
    return finish(status, csv, err, out_path);
  }
  if (coretail->parsed()) {
    status = bm_run_coretail(ct_n, ct_samples, seed, threads, &csv, &err);
    return finish(status, csv, err, out_path);
  }
  if (hartnisan->parsed()) {
    status = bm_run_hartnisan(hn_n, seed, &csv, &err);
    return finish(status, csv, err, out_path);
  }
  return 0;
}
