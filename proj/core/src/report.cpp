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

#include "wmbench/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "wmbench/error.hpp"

namespace wmbench {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::string s = fmt::format("{:.6f}", v);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::string out = std::string(kReportHeader) + "\n";
  for (const auto& r : rows)
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.scheme, r.attack, r.params, r.n_images,
                       format_number(r.mean_statistic), format_number(r.eta), format_number(r.tau),
                       format_number(r.mmd), format_number(r.psnr_mean), format_number(r.ssim_mean));
  return out;
}

std::string outcome_csv(const std::vector<ImageOutcome>& outcomes) {
  std::string out = std::string(kOutcomeHeader) + "\n";
  for (const auto& o : outcomes)
    out += fmt::format("{},{},{},{},{}\n", o.image_id, format_number(o.statistic), o.detected ? 1 : 0,
                       format_number(o.psnr), format_number(o.ssim));
  return out;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_number(const std::string& s) {
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  if (s == "nan") return NAN;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::kCorrupt, "bad number in report: '" + s + "'");
  }
}

template <typename Fn>
void for_each_data_line(const std::string& text, const char* header, std::size_t fields, Fn fn) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || split(line, ',') != split(header, ','))
    fail(ErrorCode::kCorrupt, std::string("report header mismatch, expected ") + header);
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto f = split(line, ',');
    if (f.size() != fields) fail(ErrorCode::kCorrupt, "report line has the wrong field count: " + line);
    fn(f);
  }
}

}  // namespace

std::vector<ReportRow> parse_report_csv(const std::string& text) {
  std::vector<ReportRow> rows;
  for_each_data_line(text, kReportHeader, 10, [&](const std::vector<std::string>& f) {
    ReportRow r;
    r.scheme = f[0];
    r.attack = f[1];
    r.params = f[2];
    r.n_images = static_cast<std::size_t>(std::stoull(f[3]));
    r.mean_statistic = parse_number(f[4]);
    r.eta = parse_number(f[5]);
    r.tau = parse_number(f[6]);
    r.mmd = parse_number(f[7]);
    r.psnr_mean = parse_number(f[8]);
    r.ssim_mean = parse_number(f[9]);
    rows.push_back(std::move(r));
  });
  return rows;
}

std::vector<ImageOutcome> parse_outcome_csv(const std::string& text) {
  std::vector<ImageOutcome> out;
  for_each_data_line(text, kOutcomeHeader, 5, [&](const std::vector<std::string>& f) {
    ImageOutcome o;
    o.image_id = f[0];
    o.statistic = parse_number(f[1]);
    o.detected = f[2] == "1";
    o.psnr = parse_number(f[3]);
    o.ssim = parse_number(f[4]);
    out.push_back(std::move(o));
  });
  return out;
}

std::string report_markdown(const std::vector<ReportRow>& rows, const std::vector<SkippedRow>& skipped,
                            const std::vector<FailedImage>& failures) {
  // Columns follow the attack order of the table (pre-attack, global edits,
  // metadata, paraphrase), then first appearance. Schemes by first appearance.
  static const std::vector<std::string> kAttackOrder{"none", "brightness", "rotation", "jpeg",
                                                     "noise", "strip_metadata", "paraphrase"};
  auto attack_rank = [](const std::string& attack) {
    return static_cast<std::size_t>(std::find(kAttackOrder.begin(), kAttackOrder.end(), attack) - kAttackOrder.begin());
  };
  std::vector<std::string> columns, schemes;
  std::map<std::string, std::size_t> column_rank;
  std::map<std::pair<std::string, std::string>, std::pair<double, int>> cells;
  for (const auto& r : rows) {
    const std::string col = r.column.empty() ? r.attack + (r.params.empty() ? "" : " " + r.params) : r.column;
    if (std::find(columns.begin(), columns.end(), col) == columns.end()) {
      columns.push_back(col);
      column_rank[col] = attack_rank(r.attack);
    }
    if (std::find(schemes.begin(), schemes.end(), r.scheme) == schemes.end()) schemes.push_back(r.scheme);
    auto& cell = cells[{r.scheme, col}];
    cell.first += r.eta;
    cell.second += 1;
  }

  std::stable_sort(columns.begin(), columns.end(),
                   [&](const std::string& a, const std::string& b) { return column_rank[a] < column_rank[b]; });

  std::string md = "## Detection rate (eta)\n\n| Scheme |";
  for (const auto& c : columns) md += " " + c + " |";
  md += "\n|---|";
  for (std::size_t i = 0; i < columns.size(); ++i) md += "---|";
  md += "\n";
  for (const auto& s : schemes) {
    md += "| " + s + " |";
    for (const auto& c : columns) {
      auto it = cells.find({s, c});
      md += it == cells.end() ? " - |" : fmt::format(" {:.3f} |", it->second.first / it->second.second);
    }
    md += "\n";
  }

  md += "\n## Distortion per row\n\n| Scheme | Attack | Params | n | mean statistic | eta | tau | MMD^2 | PSNR | SSIM |\n"
        "|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : rows)
    md += fmt::format("| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |\n", r.scheme, r.attack, r.params,
                      r.n_images, format_number(r.mean_statistic), format_number(r.eta), format_number(r.tau),
                      format_number(r.mmd), format_number(r.psnr_mean), format_number(r.ssim_mean));

  md += "\nRotation is the mean detection rate over the configured angles (+45 and -45 by default).\n";
  md += "Pre-Attack distortion compares the watermarked image with its host; attacked rows compare with the "
        "watermarked image.\n";
  if (!skipped.empty()) {
    md += "\n## Skipped rows\n\n";
    for (const auto& s : skipped)
      md += fmt::format("- {} / {} {}: {}\n", s.scheme, s.attack, s.params, s.reason);
  }
  if (!failures.empty()) {
    md += "\n## Failed images\n\n";
    for (const auto& f : failures)
      md += fmt::format("- {} / {} {} / {}: {}\n", f.scheme, f.attack, f.params, f.image_id, f.error);
  }
  return md;
}

}  // namespace wmbench
