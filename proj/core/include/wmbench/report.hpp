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
#include <optional>
#include <string>
#include <vector>

namespace wmbench {

// One aggregate line of the experiment report.
struct ReportRow {
  std::string scheme;
  std::string attack;
  std::string params;
  std::size_t n_images = 0;
  double mean_statistic = 0.0;
  double eta = 0.0;  // detected / n_images
  double tau = 0.0;
  double mmd = 0.0;
  double psnr_mean = 0.0;  // may be +inf
  double ssim_mean = 0.0;
  // Grouping hints for the markdown table.
  std::string column;  // e.g. "Brightness", "VP s=0.4"
};

struct ImageOutcome {
  std::string image_id;
  double statistic = 0.0;
  bool detected = false;
  double psnr = 0.0;
  double ssim = 0.0;
};

struct SkippedRow {
  std::string scheme;
  std::string attack;
  std::string params;
  std::string reason;
};

struct FailedImage {
  std::string scheme;
  std::string attack;
  std::string params;
  std::string image_id;
  std::string error;
};

inline constexpr const char* kReportHeader =
    "scheme,attack,params,n_images,mean_statistic,eta,tau,mmd,psnr_mean,ssim_mean";
inline constexpr const char* kOutcomeHeader = "image_id,statistic,detected,psnr,ssim";

// Fixed-precision formatting so reports are byte-stable; "inf" for
// infinite PSNR.
std::string format_number(double v);

std::string report_csv(const std::vector<ReportRow>& rows);
std::string outcome_csv(const std::vector<ImageOutcome>& outcomes);

// Table with one line per scheme and one column per attack setting, in the
// order Pre-Attack, Brightness, Rotation, JPEG, Noise, then paraphrase
// strengths. Rotation is the mean over the configured angles. A second
// table lists MMD / PSNR / SSIM per row; skipped rows and failures are
// listed in a footer.
std::string report_markdown(const std::vector<ReportRow>& rows, const std::vector<SkippedRow>& skipped,
                            const std::vector<FailedImage>& failures);

// Parses a report CSV back into rows (column hints are left empty).
std::vector<ReportRow> parse_report_csv(const std::string& text);
std::vector<ImageOutcome> parse_outcome_csv(const std::string& text);

}  // namespace wmbench
