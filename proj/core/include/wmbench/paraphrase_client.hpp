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

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wmbench/image.hpp"

namespace wmbench {

inline constexpr const char* kParaphraseUrlEnv = "WMBENCH_PARAPHRASE_URL";

struct ServiceHealth {
  std::string status;
  std::string captioner;
  std::string diffuser;
};

struct ParaphraseRequest {
  double strength = 0.4;
  double guidance_scale = 7.5;
  int steps = 50;
  std::uint64_t seed = 0;
  std::optional<std::string> caption;  // overrides the service captioner
};

struct ParaphraseResult {
  Image image;
  std::string caption;
};

struct ClientOptions {
  std::chrono::seconds timeout{120};
  int max_concurrent_requests = 4;
};

// Blocking client for the paraphrase service. Images travel as base64 PNG
// inside JSON. Every failure (connect, HTTP status, malformed body) is an
// Error with code kTransport. Safe to share between threads; at most
// `max_concurrent_requests` calls are in flight at once.
class ServiceClient {
 public:
  explicit ServiceClient(std::string base_url, ClientOptions options = {});
  ~ServiceClient();

  ServiceClient(const ServiceClient&) = delete;
  ServiceClient& operator=(const ServiceClient&) = delete;

  // Reads WMBENCH_PARAPHRASE_URL; empty values count as unset.
  static std::optional<std::string> url_from_env();

  const std::string& base_url() const { return base_url_; }

  ServiceHealth health() const;
  std::string caption(const Image& img) const;
  ParaphraseResult paraphrase(const Image& img, const ParaphraseRequest& request) const;
  std::vector<double> embedding(const Image& img) const;

  // Raw JSON exchange, used by the other endpoints and by ExternalTransport.
  std::string post_json(std::string_view path, const std::string& body) const;
  std::string get(std::string_view path) const;

 private:
  struct Impl;
  std::string base_url_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace wmbench
