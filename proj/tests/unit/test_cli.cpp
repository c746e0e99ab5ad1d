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

#include <sstream>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "wmbench/harness.hpp"
#include "wmbench/image_io.hpp"
#include "wmbench/synthetic.hpp"
#include "wmbench_cli/cli.hpp"

namespace wmbench {
namespace {

namespace fs = std::filesystem;
using testing::slurp;
using testing::TempDir;

struct CliResult {
  int code;
  std::string out, err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    fs::create_directories(dir / "in");
    for (int i = 0; i < 3; ++i)
      save_image(synthetic_image(Seed{static_cast<std::uint64_t>(i)}, 128), dir / "in" / ("p" + std::to_string(i) + ".png"));
    ASSERT_EQ(run({"keygen", "--scheme", "dwtdctsvd", "--seed", "7", "--out", (dir / "k.wmk").string()}).code, 0);
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  TempDir dir;
};

TEST_F(Cli, UsageErrorsExitTwo) {
  const CliResult none = run({});
  EXPECT_EQ(none.code, cli::kExitUsage);
  const CliResult unknown = run({"keygen", "--scheme", "treering", "--seed", "1", "--out", path("x"), "--bogus"});
  EXPECT_EQ(unknown.code, cli::kExitUsage);
  EXPECT_TRUE(unknown.out.empty());
  EXPECT_NE(unknown.err.find("--bogus"), std::string::npos);
  EXPECT_NE(unknown.err.find("keygen"), std::string::npos);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"keygen", "--scheme", "stegastamp", "--seed", "1", "--out", path("x")}).code, cli::kExitUsage);
}

TEST_F(Cli, DetectNeedsExactlyOneThresholdSource) {
  const std::vector<std::string> base{"detect", "--scheme", "dwtdctsvd", "--key", path("k.wmk"), "--in", path("in"),
                                      "--out", "-"};
  EXPECT_EQ(run(base).code, cli::kExitUsage);
  auto both = base;
  both.insert(both.end(), {"--tau", "0.9", "--calibration", path("c.json")});
  EXPECT_EQ(run(both).code, cli::kExitUsage);
  auto ok = base;
  ok.insert(ok.end(), {"--tau", "0.9"});
  const CliResult r = run(ok);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("image_id,statistic,tau,detected\n", 0), 0u);
  EXPECT_EQ(count_lines(r.out), 4u);
}

TEST_F(Cli, HelpGoesToStandardOutput) {
  const CliResult r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("keygen"), std::string::npos);
  EXPECT_NE(r.out.find("dump-key-fourier"), std::string::npos);
}

TEST_F(Cli, EmbedAttackDetectPipeline) {
  ASSERT_EQ(run({"embed", "--scheme", "dwtdctsvd", "--key", path("k.wmk"), "--in", path("in"), "--out", path("wm")}).code, 0);
  const CliResult attacked = run({"attack", "--kind", "brightness", "--factor", "2", "--in", path("wm"), "--out", path("br"),
                            "--seed", "1"});
  ASSERT_EQ(attacked.code, 0) << attacked.err;
  std::size_t outputs = 0;
  for (const auto& e : fs::directory_iterator(dir / "br")) outputs += e.path().extension() == ".png";
  EXPECT_EQ(outputs, 3u);
  const CliResult clean = run({"detect", "--scheme", "dwtdctsvd", "--key", path("k.wmk"), "--in", path("wm"), "--tau", "0.9",
                         "--out", path("det.csv")});
  ASSERT_EQ(clean.code, 0);
  const std::string csv = slurp(dir / "det.csv");
  EXPECT_EQ(count_lines(csv), 4u);
  EXPECT_NE(csv.find("p0,1.000000,0.900000,1"), std::string::npos) << csv;
  // Wrong scheme for the key is an operational failure.
  EXPECT_EQ(run({"detect", "--scheme", "treering", "--key", path("k.wmk"), "--in", path("wm"), "--tau", "0", "--out", "-"}).code,
            cli::kExitFailure);
}

TEST_F(Cli, CalibrateThenDetectWithRecord) {
  const CliResult c = run({"calibrate", "--scheme", "dwtdctsvd", "--key", path("k.wmk"), "--negatives", path("in"), "--fpr",
                     "0.01", "--out", path("cal.json"), "--seed", "3"});
  ASSERT_EQ(c.code, 0) << c.err;
  const auto rec = load_calibration(dir / "cal.json");
  EXPECT_GE(rec.n_negatives, kMinNegatives);
  EXPECT_LE(rec.empirical_fpr(), 0.01);
  EXPECT_EQ(run({"detect", "--scheme", "dwtdctsvd", "--key", path("k.wmk"), "--in", path("in"), "--calibration",
                 path("cal.json"), "--out", "-"})
                .code,
            0);
}

TEST_F(Cli, StripMetadataAndMissingFiles) {
  const CliResult ok = run({"strip-metadata", path("in/p0.png"), "--out", path("s.png")});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(load_image(dir / "s.png"), load_image(dir / "in" / "p0.png"));
  const CliResult missing = run({"strip-metadata", path("nope.png"), "--out", path("s2.png")});
  EXPECT_EQ(missing.code, cli::kExitFailure);
  EXPECT_NE(missing.err.find("error:"), std::string::npos);
}

TEST_F(Cli, DumpKeyFourierWritesPlanesAndMapping) {
  ASSERT_EQ(run({"keygen", "--scheme", "treering", "--pattern", "rand", "--seed", "3", "--out", path("tr.wmk")}).code, 0);
  ASSERT_EQ(run({"dump-key-fourier", "--key", path("tr.wmk"), "--out-prefix", path("P")}).code, 0);
  const Image re = load_image(dir / "P_real.png");
  EXPECT_EQ(re.width, 64);
  EXPECT_EQ(load_image(dir / "P_imag.png").height, 64);
  EXPECT_FALSE(slurp(dir / "P_mapping.txt").empty());
  EXPECT_EQ(run({"dump-key-fourier", "--key", path("k.wmk"), "--out-prefix", path("Q")}).code, cli::kExitFailure);
}

TEST_F(Cli, EvalOnTheFixtureIsReproducible) {
  const std::string config = R"({"dataset_dir": ")" + std::string(WMBENCH_DATA_DIR) + R"(/fixture", "resize_to": 128,
      "n_images": 4, "n_negatives": 100, "seed": 9, "schemes": ["gaussianshading"],
      "attacks": [{"kind": "jpeg"}], "output_dir": "out"})";
  const std::vector<std::uint8_t> bytes(config.begin(), config.end());
  write_file(dir / "cfg.json", bytes);
  const CliResult a = run({"eval", "--config", path("cfg.json")});
  ASSERT_EQ(a.code, 0) << a.err;
  const std::string first = slurp(dir / "out" / "report.csv");
  EXPECT_EQ(count_lines(first), 3u);
  ASSERT_EQ(run({"eval", "--config", path("cfg.json"), "--workers", "1"}).code, 0);
  EXPECT_EQ(slurp(dir / "out" / "report.csv"), first);
  EXPECT_EQ(run({"eval", "--config", path("missing.json")}).code, cli::kExitFailure);
}

TEST_F(Cli, MakeFixture) {
  ASSERT_EQ(run({"make-fixture", "--out", path("fx"), "--count", "2", "--side", "32", "--seed", "4"}).code, 0);
  EXPECT_EQ(load_image(dir / "fx" / "scene-001.png").width, 32);
}

}  // namespace
}  // namespace wmbench
