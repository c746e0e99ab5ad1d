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

#include "wmbench/diffusion.hpp"

#include <algorithm>
#include <cmath>

#include "wmbench/error.hpp"

namespace wmbench {

NoiseSchedule NoiseSchedule::linear(int steps, double beta_start, double beta_end) {
  require(steps >= 1, "schedule needs at least one step");
  std::vector<double> b(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    b[i] = steps == 1 ? beta_start : beta_start + (beta_end - beta_start) * i / (steps - 1);
  return from_betas(std::move(b));
}

NoiseSchedule NoiseSchedule::from_betas(std::vector<double> betas) {
  require(!betas.empty(), "schedule needs at least one step");
  NoiseSchedule s;
  double prod = 1.0;
  for (double b : betas) {
    require(std::isfinite(b) && b >= 0.0 && b < 1.0, "betas must lie in [0, 1)");
    prod *= 1.0 - b;
    s.alpha_bars_.push_back(prod);
  }
  s.betas_ = std::move(betas);
  return s;
}

std::size_t NoiseSchedule::index(int t) const {
  if (t < 1 || t > steps())
    fail(ErrorCode::kInvalidArgument, "diffusion step " + std::to_string(t) + " outside 1.." + std::to_string(steps()));
  return static_cast<std::size_t>(t - 1);
}

double NoiseSchedule::alpha_bar(int t) const {
  if (t == 0) return 1.0;
  return alpha_bars_[index(t)];
}

Image gaussian_like(const Image& shape, Seed seed) {
  Image eps = shape;
  Rng rng(seed);
  for (double& v : eps.data) v = rng.normal();
  return eps;
}

Image forward_step(const Image& x_prev, int t, const NoiseSchedule& schedule, const Image& eps) {
  require(eps.same_shape(x_prev), "forward_step: noise shape mismatch");
  const double a = schedule.alpha(t);
  const double sa = std::sqrt(a), sn = std::sqrt(1.0 - a);
  Image out = x_prev;
  for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] = sa * x_prev.data[i] + sn * eps.data[i];
  return out;
}

Image forward_step(const Image& x_prev, int t, const NoiseSchedule& schedule, Seed seed) {
  schedule.alpha(t);  // range check before drawing
  return forward_step(x_prev, t, schedule, gaussian_like(x_prev, seed));
}

Image reverse_step(const Image& x_t, int t, const Denoiser& denoiser, const Image* guide, double guidance,
                   const NoiseSchedule& schedule) {
  const double a = schedule.alpha(t);
  const Image eps = denoiser.predict_noise(x_t, t, guide, guidance, schedule);
  require(eps.same_shape(x_t), "denoiser returned the wrong shape");
  const double sn = std::sqrt(1.0 - a), inv = 1.0 / std::sqrt(a);
  Image out = x_t;
  for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] = (x_t.data[i] - sn * eps.data[i]) * inv;
  return out;
}

double GuidePullDenoiser::pull(double guidance) { return std::clamp(guidance / kGuidanceCeiling, 0.0, 1.0); }

Image GuidePullDenoiser::estimate_x0(const Image& x_t, const Image* guide, double guidance) const {
  Image x0 = gaussian_blur(x_t, kBlurSigma, kBlurRadius);
  const double lambda = guide ? pull(guidance) : 0.0;
  if (lambda == 0.0) return x0;
  require(guide->same_shape(x_t), "guide shape mismatch");
  for (std::size_t i = 0; i < x0.data.size(); ++i) x0.data[i] = (1.0 - lambda) * x0.data[i] + lambda * guide->data[i];
  return x0;
}

Image GuidePullDenoiser::predict_noise(const Image& x_t, int t, const Image* guide, double guidance,
                                       const NoiseSchedule& schedule) const {
  const double ab = schedule.alpha_bar(t);
  require(ab < 1.0, "guide-pull denoiser needs a noisy step (alpha_bar < 1)");
  const Image x0 = estimate_x0(x_t, guide, guidance);
  const double sa = std::sqrt(ab), inv = 1.0 / std::sqrt(1.0 - ab);
  Image eps = x_t;
  for (std::size_t i = 0; i < eps.data.size(); ++i) eps.data[i] = (x_t.data[i] - sa * x0.data[i]) * inv;
  return eps;
}

GaussianPriorDenoiser::GaussianPriorDenoiser(double detail_sigma) : detail_sigma_(detail_sigma) {
  require(std::isfinite(detail_sigma) && detail_sigma >= 0.0, "detail sigma must be finite and non-negative");
}

Image GaussianPriorDenoiser::estimate_x0(const Image& x_t, int t, const Image* guide, double guidance,
                                         const NoiseSchedule& schedule) const {
  const double ab = schedule.alpha_bar(t);
  require(ab < 1.0, "prior denoiser needs a noisy step (alpha_bar < 1)");
  const double sa = std::sqrt(ab);
  const double lambda = guide ? GuidePullDenoiser::pull(guidance) : 0.0;
  Image x0 = x_t;
  if (lambda == 0.0) {
    // Flat prior: invert the forward scaling, ignore the guide.
    for (double& v : x0.data) v /= sa;
    return x0;
  }
  require(guide->same_shape(x_t), "guide shape mismatch");
  const double var = lambda >= 1.0 ? 0.0 : detail_sigma_ * detail_sigma_ * (1.0 - lambda) / lambda;
  const double k = sa * var / (ab * var + 1.0 - ab);
  for (std::size_t i = 0; i < x0.data.size(); ++i)
    x0.data[i] = guide->data[i] + k * (x_t.data[i] - sa * guide->data[i]);
  return x0;
}

Image GaussianPriorDenoiser::predict_noise(const Image& x_t, int t, const Image* guide, double guidance,
                                           const NoiseSchedule& schedule) const {
  const Image x0 = estimate_x0(x_t, t, guide, guidance, schedule);
  const double sa = std::sqrt(schedule.alpha_bar(t)), inv = 1.0 / std::sqrt(1.0 - schedule.alpha_bar(t));
  Image eps = x_t;
  for (std::size_t i = 0; i < eps.data.size(); ++i) eps.data[i] = (x_t.data[i] - sa * x0.data[i]) * inv;
  return eps;
}

Image ancestral_step(const Image& x_t, int t, const Denoiser& denoiser, const Image* guide, double guidance,
                     const NoiseSchedule& schedule, Seed seed) {
  const double ab = schedule.alpha_bar(t), ab_prev = schedule.alpha_bar(t - 1);
  require(ab < 1.0, "ancestral step needs a noisy step (alpha_bar < 1)");
  const double a = schedule.alpha(t), b = schedule.beta(t);
  const Image eps = denoiser.predict_noise(x_t, t, guide, guidance, schedule);
  require(eps.same_shape(x_t), "denoiser returned the wrong shape");
  const double c0 = std::sqrt(ab_prev) * b / (1.0 - ab);
  const double ct = std::sqrt(a) * (1.0 - ab_prev) / (1.0 - ab);
  const double sd = t > 1 ? std::sqrt(b * (1.0 - ab_prev) / (1.0 - ab)) : 0.0;
  const double sa = std::sqrt(ab), sn = std::sqrt(1.0 - ab);
  Image out = x_t;
  const Image z = sd > 0.0 ? gaussian_like(x_t, seed) : Image{};
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    const double x0 = (x_t.data[i] - sn * eps.data[i]) / sa;
    out.data[i] = c0 * x0 + ct * x_t.data[i] + (sd > 0.0 ? sd * z.data[i] : 0.0);
  }
  return out;
}

}  // namespace wmbench
