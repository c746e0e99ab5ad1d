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

#include <vector>

#include "wmbench/image.hpp"
#include "wmbench/random.hpp"

namespace wmbench {

// Variance schedule. Index t runs 1..T; alpha_bar(0) is 1.
class NoiseSchedule {
 public:
  static constexpr int kDefaultSteps = 50;

  // Linear betas from beta_start to beta_end over `steps` steps.
  static NoiseSchedule linear(int steps = kDefaultSteps, double beta_start = 1e-4, double beta_end = 0.02);
  // Every beta must lie in [0, 1). A zero beta is allowed as a degenerate
  // (noise-free) step.
  static NoiseSchedule from_betas(std::vector<double> betas);

  int steps() const { return static_cast<int>(betas_.size()); }
  double beta(int t) const { return betas_.at(index(t)); }
  double alpha(int t) const { return 1.0 - beta(t); }
  double alpha_bar(int t) const;

 private:
  std::size_t index(int t) const;

  std::vector<double> betas_;
  std::vector<double> alpha_bars_;
};

// eps_theta(x_t, t) with an optional guide image and guidance weight.
class Denoiser {
 public:
  virtual ~Denoiser() = default;
  virtual Image predict_noise(const Image& x_t, int t, const Image* guide, double guidance,
                              const NoiseSchedule& schedule) const = 0;
};

// Analytic stand-in for a trained denoiser:
//   x0_hat = (1 - lambda) * blur(x_t) + lambda * guide,  lambda = clamp(gs / 15, 0, 1)
//   eps    = (x_t - sqrt(abar_t) x0_hat) / sqrt(1 - abar_t)
// blur is a 5x5 Gaussian with sigma 1.5. Without a guide lambda is 0.
class GuidePullDenoiser : public Denoiser {
 public:
  static constexpr double kGuidanceCeiling = 15.0;
  static constexpr double kBlurSigma = 1.5;
  static constexpr int kBlurRadius = 2;

  Image predict_noise(const Image& x_t, int t, const Image* guide, double guidance,
                      const NoiseSchedule& schedule) const override;
  static double pull(double guidance);
  Image estimate_x0(const Image& x_t, const Image* guide, double guidance) const;
};

// x_t = sqrt(alpha_t) x_{t-1} + sqrt(1 - alpha_t) eps, eps ~ N(0, I).
Image forward_step(const Image& x_prev, int t, const NoiseSchedule& schedule, Seed seed);
Image forward_step(const Image& x_prev, int t, const NoiseSchedule& schedule, const Image& eps);

// x_{t-1} = (x_t - sqrt(1 - alpha_t) eps_theta(x_t, t)) / sqrt(alpha_t).
// Deterministic: no posterior noise is added.
Image reverse_step(const Image& x_t, int t, const Denoiser& denoiser, const Image* guide, double guidance,
                   const NoiseSchedule& schedule);

// Posterior mean under a Gaussian prior x0 ~ N(guide, v I):
//   x0_hat = guide + k (x_t - sqrt(abar) guide),  k = sqrt(abar) v / (abar v + 1 - abar)
// with v = detail_sigma^2 (1 - lambda) / lambda and lambda as in GuidePullDenoiser.
// lambda = 1 returns the guide; lambda = 0 (or no guide) gives x_t / sqrt(abar).
class GaussianPriorDenoiser : public Denoiser {
 public:
  explicit GaussianPriorDenoiser(double detail_sigma);

  Image predict_noise(const Image& x_t, int t, const Image* guide, double guidance,
                      const NoiseSchedule& schedule) const override;
  Image estimate_x0(const Image& x_t, int t, const Image* guide, double guidance,
                    const NoiseSchedule& schedule) const;
  double detail_sigma() const { return detail_sigma_; }

 private:
  double detail_sigma_;
};

// One ancestral (DDPM posterior) step: x0_hat from the predicted noise, then
//   x_{t-1} = c0 x0_hat + ct x_t + sigma_t z
// with the usual posterior coefficients. No noise is added at t = 1.
Image ancestral_step(const Image& x_t, int t, const Denoiser& denoiser, const Image* guide, double guidance,
                     const NoiseSchedule& schedule, Seed seed);

// Standard normal noise with the image's geometry.
Image gaussian_like(const Image& shape, Seed seed);

}  // namespace wmbench
