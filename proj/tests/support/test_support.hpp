// Copyright 2026 The wmbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <numeric>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "wmbench/image.hpp"
#include "wmbench/random.hpp"
#include "wmbench/transforms.hpp"

namespace wmbench::testing {

inline Image random_image(Seed seed, int width, int height, int channels) {
  Image img(width, height, channels);
  Rng rng(seed);
  for (double& v : img.data) v = rng.uniform();
  return img;
}

inline Grid random_grid(Rng& rng, int rows, int cols, double lo = -1.0, double hi = 1.0) {
  Grid g(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) g(r, c) = lo + (hi - lo) * rng.uniform();
  return g;
}

// Removes itself on destruction.
// Ranks with ties averaged, 1-based.
inline std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = (static_cast<double>(i + j) / 2.0) + 1.0;
    i = j + 1;
  }
  return r;
}

// Spearman rank correlation: Pearson correlation of the tie-averaged ranks.
// Returns 0 when either side is constant.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const auto rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("wmbench-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Checks a value against the subset of JSON Schema used by the protocol
// schemas: type, enum, minLength, pattern, minimum, maximum, items,
// minItems, maxItems, properties, required, additionalProperties = false.
// Returns an empty string on success, otherwise the first violation.
inline constexpr const char* kBase64Pattern = "^[A-Za-z0-9+/]*={0,2}$";

// std::regex recurses per character, which overflows the stack on
// megabyte-sized base64 payloads, so the base64 pattern is checked by hand.
inline bool matches_pattern(const std::string& pattern, const std::string& s) {
  if (pattern != kBase64Pattern) return std::regex_search(s, std::regex(pattern));
  std::size_t end = s.size(), pad = 0;
  while (end > 0 && s[end - 1] == '=' && pad < 2) --end, ++pad;
  return std::all_of(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(end), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '/';
  });
}

inline std::string schema_violation(const nlohmann::json& schema, const nlohmann::json& v, const std::string& at = "$") {
  using nlohmann::json;
  if (schema.contains("type")) {
    const std::string t = schema["type"];
    const bool ok = (t == "object" && v.is_object()) || (t == "array" && v.is_array()) ||
                    (t == "string" && v.is_string()) || (t == "number" && v.is_number()) ||
                    (t == "integer" && v.is_number_integer()) || (t == "boolean" && v.is_boolean());
    if (!ok) return at + ": expected " + t;
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& e : schema["enum"]) found = found || e == v;
    if (!found) return at + ": not in enum";
  }
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (schema.contains("minLength") && s.size() < schema["minLength"].get<std::size_t>()) return at + ": too short";
    if (schema.contains("pattern") && !matches_pattern(schema["pattern"].get<std::string>(), s))
      return at + ": pattern mismatch";
  }
  if (v.is_number()) {
    if (schema.contains("minimum") && v.get<double>() < schema["minimum"].get<double>()) return at + ": below minimum";
    if (schema.contains("maximum") && v.get<double>() > schema["maximum"].get<double>()) return at + ": above maximum";
  }
  if (v.is_array()) {
    if (schema.contains("minItems") && v.size() < schema["minItems"].get<std::size_t>()) return at + ": too few items";
    if (schema.contains("maxItems") && v.size() > schema["maxItems"].get<std::size_t>()) return at + ": too many items";
    if (schema.contains("items"))
      for (std::size_t i = 0; i < v.size(); ++i)
        if (auto w = schema_violation(schema["items"], v[i], at + "[" + std::to_string(i) + "]"); !w.empty()) return w;
  }
  if (v.is_object()) {
    if (schema.contains("required"))
      for (const auto& r : schema["required"])
        if (!v.contains(r.get<std::string>())) return at + ": missing " + r.get<std::string>();
    const json props = schema.value("properties", json::object());
    for (const auto& [k, val] : v.items()) {
      if (props.contains(k)) {
        if (auto w = schema_violation(props[k], val, at + "." + k); !w.empty()) return w;
      } else if (schema.contains("additionalProperties") && schema["additionalProperties"] == false) {
        return at + ": unexpected property " + k;
      }
    }
  }
  return {};
}

inline nlohmann::json load_schema(const std::string& name) {
  return nlohmann::json::parse(slurp(std::filesystem::path(WMBENCH_SCHEMA_DIR) / (name + ".schema.json")));
}

}  // namespace wmbench::testing
