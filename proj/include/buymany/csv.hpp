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

#ifndef BUYMANY_CSV_HPP_
#define BUYMANY_CSV_HPP_

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>

namespace buymany {

// Locale-independent number formatting: 9 significant digits, dot decimal.
// std::to_chars never consults the locale.
inline std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  if (x == 0.0) x = 0.0;  // normalize -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x,
                           std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

inline std::string format_number(std::uint64_t x) { return std::to_string(x); }
inline std::string format_number(int x) { return std::to_string(x); }

class CsvWriter {
 public:
  explicit CsvWriter(std::string header) { out_ = std::move(header); out_ += '\n'; }

  template <typename... Ts>
  void row(const Ts&... fields) {
    bool first = true;
    ((out_ += (first ? (first = false, "") : ","), append(fields)), ...);
    out_ += '\n';
  }

  const std::string& str() const { return out_; }
  std::string take() { return std::move(out_); }

 private:
  void append(const std::string& s) { out_ += s; }
  void append(const char* s) { out_ += s; }
  void append(double x) { out_ += format_number(x); }
  void append(int x) { out_ += std::to_string(x); }
  void append(std::uint64_t x) { out_ += std::to_string(x); }

  std::string out_;
};

}  // namespace buymany

#endif  // BUYMANY_CSV_HPP_
