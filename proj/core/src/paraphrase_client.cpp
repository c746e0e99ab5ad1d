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

#include "wmbench/paraphrase_client.hpp"

#include <cstdlib>
#include <semaphore>

#include <httplib.h>
#include <json.hpp>

#include "wmbench/base64.hpp"
#include "wmbench/error.hpp"
#include "wmbench/image_io.hpp"

namespace wmbench {

using json = nlohmann::json;

struct ServiceClient::Impl {
  std::string host;  // scheme://host[:port]
  std::string prefix;
  ClientOptions options;
  mutable std::counting_semaphore<> slots;

  Impl(std::string h, std::string p, ClientOptions o)
      : host(std::move(h)), prefix(std::move(p)), options(o), slots(o.max_concurrent_requests) {}

  // httplib clients are not thread-safe, so each call gets its own.
  httplib::Client client() const {
    httplib::Client c(host);
    const auto t = static_cast<time_t>(options.timeout.count());
    c.set_connection_timeout(t, 0);
    c.set_read_timeout(t, 0);
    c.set_write_timeout(t, 0);
    return c;
  }
};

namespace {

class SlotGuard {
 public:
  explicit SlotGuard(std::counting_semaphore<>& s) : s_(s) { s_.acquire(); }
  ~SlotGuard() { s_.release(); }
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;

 private:
  std::counting_semaphore<>& s_;
};

std::string check_response(const httplib::Result& res, std::string_view path) {
  if (!res)
    fail(ErrorCode::kTransport,
         "paraphrase service request " + std::string(path) + " failed: " + httplib::to_string(res.error()));
  if (res->status != 200)
    fail(ErrorCode::kTransport,
         "paraphrase service " + std::string(path) + " returned HTTP " + std::to_string(res->status));
  return res->body;
}

json parse_body(const std::string& body, std::string_view path) {
  try {
    json j = json::parse(body);
    if (!j.is_object()) throw std::runtime_error("not an object");
    return j;
  } catch (const std::exception&) {
    fail(ErrorCode::kTransport, "malformed JSON from " + std::string(path));
  }
}

std::string string_field(const json& j, const char* name, std::string_view path) {
  auto it = j.find(name);
  if (it == j.end() || !it->is_string())
    fail(ErrorCode::kTransport, "response from " + std::string(path) + " lacks string field '" + name + "'");
  return it->get<std::string>();
}

Image decode_image_field(const json& j, std::string_view path) {
  const std::string b64 = string_field(j, "image", path);
  try {
    return decode_image(base64_decode(b64));
  } catch (const Error& e) {
    fail(ErrorCode::kTransport, "undecodable image from " + std::string(path) + ": " + e.what());
  }
}

}  // namespace

ServiceClient::ServiceClient(std::string base_url, ClientOptions options) : base_url_(std::move(base_url)) {
  require(options.max_concurrent_requests >= 1, "concurrency cap must be at least 1");
  while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
  const auto scheme_end = base_url_.find("://");
  if (scheme_end == std::string::npos)
    fail(ErrorCode::kInvalidArgument, "service URL must include a scheme: " + base_url_);
  const auto path_start = base_url_.find('/', scheme_end + 3);
  std::string host = base_url_.substr(0, path_start);
  std::string prefix = path_start == std::string::npos ? "" : base_url_.substr(path_start);
  impl_ = std::make_unique<Impl>(std::move(host), std::move(prefix), options);
}

ServiceClient::~ServiceClient() = default;

std::optional<std::string> ServiceClient::url_from_env() {
  const char* v = std::getenv(kParaphraseUrlEnv);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

std::string ServiceClient::post_json(std::string_view path, const std::string& body) const {
  SlotGuard guard(impl_->slots);
  auto c = impl_->client();
  const std::string full = impl_->prefix + std::string(path);
  return check_response(c.Post(full, body, "application/json"), path);
}

std::string ServiceClient::get(std::string_view path) const {
  SlotGuard guard(impl_->slots);
  auto c = impl_->client();
  const std::string full = impl_->prefix + std::string(path);
  return check_response(c.Get(full), path);
}

ServiceHealth ServiceClient::health() const {
  const json j = parse_body(get("/health"), "/health");
  return {string_field(j, "status", "/health"), string_field(j, "captioner", "/health"),
          string_field(j, "diffuser", "/health")};
}

std::string ServiceClient::caption(const Image& img) const {
  const json req = {{"image", base64_encode(encode_png(img))}};
  const json j = parse_body(post_json("/caption", req.dump()), "/caption");
  return string_field(j, "caption", "/caption");
}

ParaphraseResult ServiceClient::paraphrase(const Image& img, const ParaphraseRequest& r) const {
  json req = {{"image", base64_encode(encode_png(img))},
              {"strength", r.strength},
              {"guidance_scale", r.guidance_scale},
              {"steps", r.steps},
              {"seed", r.seed}};
  if (r.caption) req["caption"] = *r.caption;
  const json j = parse_body(post_json("/paraphrase", req.dump()), "/paraphrase");
  ParaphraseResult out;
  out.image = decode_image_field(j, "/paraphrase");
  out.caption = string_field(j, "caption", "/paraphrase");
  return out;
}

std::vector<double> ServiceClient::embedding(const Image& img) const {
  const json req = {{"image", base64_encode(encode_png(img))}};
  const json j = parse_body(post_json("/embedding", req.dump()), "/embedding");
  auto it = j.find("vector");
  if (it == j.end() || !it->is_array() || it->empty())
    fail(ErrorCode::kTransport, "response from /embedding lacks a non-empty 'vector'");
  std::vector<double> v;
  v.reserve(it->size());
  for (const auto& x : *it) {
    if (!x.is_number()) fail(ErrorCode::kTransport, "non-numeric entry in /embedding vector");
    v.push_back(x.get<double>());
  }
  return v;
}

}  // namespace wmbench
