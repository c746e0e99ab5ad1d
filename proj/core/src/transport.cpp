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

#include <bit>
#include <cmath>
#include <cstring>

#include <Eigen/QR>
#include <json.hpp>

#include "wmbench/base64.hpp"
#include "wmbench/error.hpp"
#include "wmbench/image_io.hpp"
#include "wmbench/latent.hpp"
#include "wmbench/paraphrase_client.hpp"

namespace wmbench {

using json = nlohmann::json;

Latent Latent::gaussian(Seed seed) {
  Rng rng(seed);
  Latent z;
  for (auto& v : z.data) v = rng.normal();
  return z;
}

Grid Latent::channel(int c) const {
  Grid g(kSide, kSide);
  std::copy_n(data.begin() + static_cast<std::ptrdiff_t>(c * kPlane), kPlane, g.data());
  return g;
}

void Latent::set_channel(int c, const Grid& grid) {
  require(grid.rows() == kSide && grid.cols() == kSide, "latent channel must be 64x64");
  std::copy_n(grid.data(), kPlane, data.begin() + static_cast<std::ptrdiff_t>(c * kPlane));
}

void validate(const Latent& z) {
  require(z.data.size() == Latent::kSize, "latent must hold 4x64x64 values");
  for (double v : z.data) require(std::isfinite(v), "latent contains a non-finite value");
}

// ---------------------------------------------------------------------------

IdentityTransport::IdentityTransport(double offset, double gain) : offset_(offset), gain_(gain) {
  require(gain > 0.0 && std::isfinite(gain), "transport gain must be positive");
  require(std::isfinite(offset), "transport offset must be finite");
}

Image IdentityTransport::pack(const Latent& z) const {
  validate(z);
  constexpr int n = Latent::kSide;
  Image img(2 * n, 2 * n, 1);
  for (int c = 0; c < Latent::kChannels; ++c) {
    const int oy = (c / 2) * n, ox = (c % 2) * n;
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) img.at(0, oy + y, ox + x) = offset_ + gain_ * z.at(c, y, x);
  }
  clamp_unit(img);
  return img;
}

Latent IdentityTransport::unpack(const Image& img) const {
  constexpr int n = Latent::kSide;
  if (img.width != 2 * n || img.height != 2 * n)
    fail(ErrorCode::kInvalidArgument, "latent image must be 128x128, got " + std::to_string(img.width) + "x" +
                                          std::to_string(img.height));
  const Image gray = to_gray(img);
  Latent z;
  for (int c = 0; c < Latent::kChannels; ++c) {
    const int oy = (c / 2) * n, ox = (c % 2) * n;
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) z.at(c, y, x) = (gray.at(0, oy + y, ox + x) - offset_) / gain_;
  }
  return z;
}

Image IdentityTransport::generate(const Latent& z) const { return pack(z); }

Latent IdentityTransport::invert(const Image& img) const { return unpack(img); }

// ---------------------------------------------------------------------------

namespace {

Grid random_orthogonal(Rng& rng, int n) {
  Grid a(n, n);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  // Sign-fix the columns so the map is a deterministic function of the draw.
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace

ToyTransport::ToyTransport(Seed seed) {
  Rng rng(seed);
  for (int c = 0; c < Latent::kChannels; ++c) {
    left_.push_back(random_orthogonal(rng, Latent::kSide));
    right_.push_back(random_orthogonal(rng, Latent::kSide));
  }
}

Image ToyTransport::generate(const Latent& z) const {
  validate(z);
  Latent mixed;
  for (int c = 0; c < Latent::kChannels; ++c)
    mixed.set_channel(c, left_[c] * z.channel(c) * right_[c].transpose());
  return pack(mixed);
}

Latent ToyTransport::invert(const Image& img) const {
  const Latent mixed = unpack(img);
  Latent z;
  for (int c = 0; c < Latent::kChannels; ++c)
    z.set_channel(c, left_[c].transpose() * mixed.channel(c) * right_[c]);
  return z;
}

// ---------------------------------------------------------------------------

std::string encode_latent(const Latent& z) {
  validate(z);
  std::vector<std::uint8_t> bytes(z.data.size() * 4);
  for (std::size_t i = 0; i < z.data.size(); ++i) {
    const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(z.data[i]));
    for (int b = 0; b < 4; ++b) bytes[4 * i + b] = static_cast<std::uint8_t>(bits >> (8 * b));
  }
  return base64_encode(bytes);
}

Latent decode_latent(std::string_view text) {
  const auto bytes = base64_decode(text);
  if (bytes.size() != Latent::kSize * 4) fail(ErrorCode::kCorrupt, "latent payload has the wrong size");
  Latent z;
  for (std::size_t i = 0; i < Latent::kSize; ++i) {
    std::uint32_t bits = 0;
    for (int b = 0; b < 4; ++b) bits |= static_cast<std::uint32_t>(bytes[4 * i + b]) << (8 * b);
    z.data[i] = std::bit_cast<float>(bits);
  }
  validate(z);
  return z;
}

ExternalTransport::ExternalTransport(std::shared_ptr<const ServiceClient> client) : client_(std::move(client)) {
  require(client_ != nullptr, "external transport needs a service client");
}

Image ExternalTransport::generate(const Latent& z) const {
  const json req = {{"latent", encode_latent(z)}, {"shape", {Latent::kChannels, Latent::kSide, Latent::kSide}}};
  const std::string body = client_->post_json("/latent/generate", req.dump());
  try {
    const json j = json::parse(body);
    return decode_image(base64_decode(j.at("image").get<std::string>()));
  } catch (const Error& e) {
    fail(ErrorCode::kTransport, std::string("bad /latent/generate response: ") + e.what());
  } catch (const std::exception& e) {
    fail(ErrorCode::kTransport, std::string("malformed /latent/generate response: ") + e.what());
  }
}

Latent ExternalTransport::invert(const Image& img) const {
  const json req = {{"image", base64_encode(encode_png(img))}};
  const std::string body = client_->post_json("/latent/invert", req.dump());
  try {
    const json j = json::parse(body);
    return decode_latent(j.at("latent").get<std::string>());
  } catch (const Error& e) {
    fail(ErrorCode::kTransport, std::string("bad /latent/invert response: ") + e.what());
  } catch (const std::exception& e) {
    fail(ErrorCode::kTransport, std::string("malformed /latent/invert response: ") + e.what());
  }
}

Seed transport_seed(Seed key_seed) noexcept { return derive_seed(key_seed, {0x746f79}); }

std::shared_ptr<const LatentTransport> make_transport(std::string_view name, Seed seed,
                                                      std::shared_ptr<const ServiceClient> client) {
  if (name == "identity") return std::make_shared<IdentityTransport>();
  if (name == "toy") return std::make_shared<ToyTransport>(seed);
  if (name == "external") {
    if (!client) fail(ErrorCode::kTransport, "external transport requested but no service URL configured");
    return std::make_shared<ExternalTransport>(std::move(client));
  }
  fail(ErrorCode::kInvalidArgument, "unknown transport '" + std::string(name) + "'");
}

}  // namespace wmbench
