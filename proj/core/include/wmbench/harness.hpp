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

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wmbench/attacks.hpp"
#include "wmbench/image.hpp"
#include "wmbench/random.hpp"
#include "wmbench/report.hpp"
#include "wmbench/schemes.hpp"
#include "wmbench/watermark.hpp"

namespace wmbench {

struct IngestedImage {
  std::string id;  // file stem
  Image image;
};

// Lists image files, sorts them by name, shuffles with `seed`, keeps the
// first `n_images` that decode, center-crops to a square and resizes to
// resize_to x resize_to (RGB). Throws kInsufficientData if too few decode.
std::vector<IngestedImage> ingest_dataset(const std::filesystem::path& dir, int resize_to, std::size_t n_images,
                                          Seed seed);

struct CalibrationRecord {
  SchemeId scheme = SchemeId::kDwtDctSvd;
  double tau = 0.0;
  double fpr_target = 0.01;
  std::size_t n_negatives = 0;
  std::size_t false_positives = 0;  // on the calibration set itself
  bool degenerate = false;          // every negative had the same statistic
  // Quantiles at 0, 0.25, 0.5, 0.75, 0.95, 0.99 and 1.
  std::vector<double> negative_quantiles;

  double empirical_fpr() const {
    return n_negatives ? static_cast<double>(false_positives) / static_cast<double>(n_negatives) : 0.0;
  }
};

inline constexpr std::size_t kMinNegatives = 100;

// tau is the smallest double strictly above the k-th smallest negative
// statistic, k = ceil((1 - fpr) n). Ties therefore resolve against
// detection and at most n - k negatives pass.
CalibrationRecord calibrate_threshold(SchemeId scheme, std::vector<double> negative_statistics, double fpr_target);
CalibrationRecord calibrate_threshold(const Scheme& scheme, const std::vector<Image>& negatives, double fpr_target,
                                      int workers = 1);

std::string calibration_to_json(const CalibrationRecord& r);
CalibrationRecord calibration_from_json(const std::string& text);
void save_calibration(const CalibrationRecord& r, const std::filesystem::path& path);
CalibrationRecord load_calibration(const std::filesystem::path& path);

struct SchemeConfig {
  SchemeId id = SchemeId::kDwtDctSvd;
  std::optional<std::filesystem::path> key_path;
  KeygenOptions keygen;
  std::string transport = "identity";
};

struct ExperimentConfig {
  std::filesystem::path dataset_dir;
  int resize_to = 512;
  std::vector<SchemeConfig> schemes;
  std::vector<AttackSpec> attacks;  // expanded grid, in report order
  std::size_t n_images = 50;
  Seed seed{0};
  double fpr_target = 0.01;
  std::size_t n_negatives = 500;
  std::filesystem::path output_dir;
  int workers = 0;  // 0 = hardware concurrency
  std::optional<std::string> paraphrase_url;

  void validate() const;
};

// Strength sweep used when a paraphrase attack lists no strengths.
std::vector<double> default_strengths();

// The standard attack list: brightness x2, rotation +45/-45, JPEG 50, noise
// 0.05, surrogate paraphrase at the default strengths with gs 7.5.
std::vector<AttackSpec> default_attacks();

// JSON config; relative paths resolve against `base_dir`. Parameter values
// may be scalars or arrays (expanded as a grid).
ExperimentConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir);
ExperimentConfig load_config(const std::filesystem::path& path);

struct ExperimentResult {
  std::vector<ReportRow> rows;
  std::vector<SkippedRow> skipped;
  std::vector<FailedImage> failures;
  std::vector<CalibrationRecord> calibrations;
  std::size_t failed_rows = 0;
  std::size_t attempted_rows = 0;

  // Non-zero exit is warranted when more than 10% of attempted rows had a
  // failure.
  bool too_many_failures() const { return attempted_rows > 0 && failed_rows * 10 > attempted_rows; }
};

using ProgressFn = std::function<void(const std::string&)>;

// Runs the sweep and writes report.csv, report.md, per-row outcome CSVs
// under outcomes/, calibration records and keys into output_dir.
ExperimentResult run_experiment(const ExperimentConfig& config, const ProgressFn& progress = {});

// Deterministic parallel loop; results must be written by index.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

// Calibration negatives for pixel schemes: the images themselves, then
// seeded random crops (60-100% of the side, random flip) of them resized
// back, until `count` images exist.
std::vector<Image> augment_negatives(const std::vector<Image>& pool, std::size_t count, Seed seed);

}  // namespace wmbench
