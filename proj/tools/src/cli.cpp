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

#include "wmbench_cli/cli.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "wmbench/attacks.hpp"
#include "wmbench/error.hpp"
#include "wmbench/harness.hpp"
#include "wmbench/image_io.hpp"
#include "wmbench/latent.hpp"
#include "wmbench/metadata.hpp"
#include "wmbench/paraphrase_client.hpp"
#include "wmbench/report.hpp"
#include "wmbench/schemes.hpp"
#include "wmbench/synthetic.hpp"
#include "wmbench/transforms.hpp"
#include "wmbench/treering.hpp"
#include "wmbench/watermark.hpp"

namespace wmbench::cli {
namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kSchemeNames{"dwtdctsvd", "treering", "gaussianshading"};
const std::vector<std::string> kAttackNames{"none", "brightness", "rotation", "jpeg",
                                            "noise", "strip_metadata", "paraphrase"};

std::vector<fs::path> list_images(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) fail(ErrorCode::kIo, "not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && has_image_extension(e.path())) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
}

std::shared_ptr<const ServiceClient> client_for(const std::string& url_flag) {
  std::optional<std::string> url;
  if (!url_flag.empty()) url = url_flag;
  else url = ServiceClient::url_from_env();
  if (!url) return nullptr;
  return std::make_shared<ServiceClient>(*url);
}

std::unique_ptr<Scheme> load_scheme(const std::string& scheme, const fs::path& key_path, const std::string& transport,
                                    std::shared_ptr<const ServiceClient> client = nullptr) {
  const WatermarkKey key = key_load(key_path);
  expect_scheme(key, parse_scheme(scheme));
  if (key.scheme() == SchemeId::kDwtDctSvd) return make_scheme(key);
  return make_scheme(key, make_transport(transport, transport_seed(key.seed), std::move(client)));
}

// Runs `fn` over the files, collecting per-file failures instead of
// stopping at the first one. Returns the failure count.
std::size_t for_each_file(const std::vector<fs::path>& files, int workers, std::ostream& err,
                          const std::function<void(std::size_t, const fs::path&)>& fn) {
  std::vector<std::string> errors(files.size());
  std::atomic<std::size_t> failed{0};
  parallel_for(files.size(), workers, [&](std::size_t i) {
    try {
      fn(i, files[i]);
    } catch (const std::exception& e) {
      errors[i] = e.what();
      ++failed;
    }
  });
  for (std::size_t i = 0; i < files.size(); ++i)
    if (!errors[i].empty()) err << fmt::format("{}: {}\n", files[i].filename().string(), errors[i]);
  return failed.load();
}

// ---------------------------------------------------------------------------

struct KeygenArgs {
  std::string scheme;
  std::string pattern = "ring";
  std::uint64_t seed = 0;
  std::string out;
  std::size_t payload_bits = kDefaultPayloadBits;
  std::optional<double> embed_strength;
  std::optional<double> sigma;
};

int cmd_keygen(const KeygenArgs& a, std::ostream& out) {
  KeygenOptions opt;
  opt.payload_bits = a.payload_bits;
  opt.pattern = parse_ring_pattern(a.pattern);
  if (a.embed_strength) opt.dwtdctsvd.embed_strength = *a.embed_strength;
  if (a.sigma) opt.shading.sigma = *a.sigma;
  const WatermarkKey key = generate_key(parse_scheme(a.scheme), Seed{a.seed}, opt);
  key_save(key, a.out);
  out << a.out << '\n';
  return kExitOk;
}

struct EmbedArgs {
  std::string scheme, key, in, out, transport = "identity";
  int workers = 0;
};

int cmd_embed(const EmbedArgs& a, std::ostream& out, std::ostream& err) {
  const auto scheme = load_scheme(a.scheme, a.key, a.transport);
  const auto files = list_images(a.in);
  make_dir(a.out);
  const std::size_t failed = for_each_file(files, a.workers, err, [&](std::size_t, const fs::path& f) {
    save_image(scheme->embed(load_image(f)), fs::path(a.out) / (f.stem().string() + ".png"));
  });
  out << fmt::format("embedded {} of {}\n", files.size() - failed, files.size());
  return failed ? kExitFailure : kExitOk;
}

struct AttackArgs {
  std::string kind, in, out, backend = "surrogate", paraphrase_url;
  AttackSpec spec;
  std::uint64_t seed = 0;
  int workers = 0;
};

int cmd_attack(AttackArgs a, std::ostream& out, std::ostream& err) {
  a.spec.kind = parse_attack_kind(a.kind);
  a.spec.backend = parse_backend(a.backend);
  a.spec.validate();
  std::shared_ptr<const ServiceClient> client;
  if (a.spec.kind == AttackKind::kParaphrase && a.spec.backend == ParaphraseBackend::kExternal) {
    client = client_for(a.paraphrase_url);
    if (!client) fail(ErrorCode::kTransport, "external backend needs --paraphrase-url or WMBENCH_PARAPHRASE_URL");
  }
  const auto files = list_images(a.in);
  make_dir(a.out);
  const std::size_t failed = for_each_file(files, a.workers, err, [&](std::size_t i, const fs::path& f) {
    if (a.spec.kind == AttackKind::kStripMetadata) {
      // Container level: keep the format, drop ancillary segments.
      strip_metadata_file(f, fs::path(a.out) / f.filename());
      return;
    }
    AttackSpec s = a.spec;
    s.seed = derive_seed(Seed{a.seed}, {static_cast<std::uint64_t>(i)});
    save_image(apply_attack(s, load_image(f), client.get()).image, fs::path(a.out) / (f.stem().string() + ".png"));
  });
  out << fmt::format("attacked {} of {}\n", files.size() - failed, files.size());
  return failed ? kExitFailure : kExitOk;
}

struct DetectArgs {
  std::string scheme, key, in, out, transport = "identity";
  std::optional<double> tau;
  std::string calibration;
  int workers = 0;
};

int cmd_detect(const DetectArgs& a, std::ostream& out, std::ostream& err) {
  const auto scheme = load_scheme(a.scheme, a.key, a.transport);
  double tau = 0.0;
  if (a.tau) {
    tau = *a.tau;
  } else {
    const CalibrationRecord rec = load_calibration(a.calibration);
    if (rec.scheme != scheme->id()) fail(ErrorCode::kSchemeMismatch, "calibration is for another scheme");
    tau = rec.tau;
  }
  const auto files = list_images(a.in);
  std::vector<std::optional<DetectionOutcome>> results(files.size());
  const std::size_t failed = for_each_file(files, a.workers, err, [&](std::size_t i, const fs::path& f) {
    results[i] = scheme->detect(load_image(f), tau);
  });
  std::string csv = "image_id,statistic,tau,detected\n";
  std::size_t hits = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (!results[i]) continue;
    hits += results[i]->detected;
    csv += fmt::format("{},{},{},{}\n", files[i].stem().string(), format_number(results[i]->statistic),
                       format_number(tau), results[i]->detected ? 1 : 0);
  }
  if (a.out == "-") {
    out << csv;
  } else {
    if (fs::path(a.out).has_parent_path()) make_dir(fs::path(a.out).parent_path());
    write_file(a.out, std::vector<std::uint8_t>(csv.begin(), csv.end()));
    out << fmt::format("detected {} of {}\n", hits, files.size() - failed);
  }
  return failed ? kExitFailure : kExitOk;
}

struct CalibrateArgs {
  std::string scheme, key, negatives, out, transport = "identity";
  double fpr = 0.01;
  std::size_t n_negatives = 0;
  std::uint64_t seed = 0;
  int workers = 0;
};

int cmd_calibrate(const CalibrateArgs& a, std::ostream& out, std::ostream& err) {
  const auto scheme = load_scheme(a.scheme, a.key, a.transport);
  const auto files = list_images(a.negatives);
  std::vector<std::optional<Image>> loaded(files.size());
  for_each_file(files, a.workers, err, [&](std::size_t i, const fs::path& f) { loaded[i] = load_image(f); });
  std::vector<Image> pool;
  for (auto& im : loaded)
    if (im) pool.push_back(std::move(*im));
  if (pool.empty()) fail(ErrorCode::kInsufficientData, "no readable negatives in " + a.negatives);
  // Short sets are topped up with seeded crops and flips.
  const std::size_t want = std::max({a.n_negatives, kMinNegatives, pool.size()});
  std::vector<Image> negatives = want > pool.size() ? augment_negatives(pool, want, Seed{a.seed}) : std::move(pool);
  const CalibrationRecord rec = calibrate_threshold(*scheme, negatives, a.fpr, a.workers);
  save_calibration(rec, a.out);
  out << fmt::format("tau {} from {} negatives\n", format_number(rec.tau), rec.n_negatives);
  return kExitOk;
}

struct EvalArgs {
  std::string config, paraphrase_url;
  std::optional<int> workers;
};

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg = load_config(a.config);
  if (a.workers) cfg.workers = *a.workers;
  if (!a.paraphrase_url.empty()) cfg.paraphrase_url = a.paraphrase_url;
  const ExperimentResult r = run_experiment(cfg, [&](const std::string& msg) { err << msg << '\n'; });
  out << (cfg.output_dir / "report.csv").string() << '\n';
  out << (cfg.output_dir / "report.md").string() << '\n';
  if (r.too_many_failures()) {
    err << fmt::format("{} of {} rows had failures\n", r.failed_rows, r.attempted_rows);
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_strip(const std::string& in, const std::string& out_path, std::ostream& out) {
  const StripResult r = strip_metadata_file(in, out_path);
  out << format_strip_report(r);
  return kExitOk;
}

void write_plane(const Grid& g, const fs::path& path, double& lo, double& hi) {
  lo = g.minCoeff();
  hi = g.maxCoeff();
  Image img(static_cast<int>(g.cols()), static_cast<int>(g.rows()), 1);
  const double span = hi - lo;
  for (Eigen::Index r = 0; r < g.rows(); ++r)
    for (Eigen::Index c = 0; c < g.cols(); ++c)
      img.at(0, static_cast<int>(r), static_cast<int>(c)) = span > 0.0 ? (g(r, c) - lo) / span : 0.0;
  save_image(img, path);
}

int cmd_dump_fourier(const std::string& key_path, const std::string& prefix, std::ostream& out) {
  const WatermarkKey key = key_load(key_path);
  expect_scheme(key, SchemeId::kTreeRing);
  const RingKey rk = ring_key_generate(std::get<TreeRingPayload>(key.payload), key.seed);
  const fs::path p(prefix);
  if (p.has_parent_path()) make_dir(p.parent_path());
  double rlo = 0, rhi = 0, ilo = 0, ihi = 0;
  write_plane(rk.values.real, prefix + "_real.png", rlo, rhi);
  write_plane(rk.values.imag, prefix + "_imag.png", ilo, ihi);
  const std::string side = fmt::format(
      "# linear map: value -> 255 * (value - min) / (max - min); constant planes map to 0\n"
      "# spectrum is fftshift-ed (DC at row 32, column 32) of latent channel {}\n"
      "plane,min,max\nreal,{},{}\nimag,{},{}\n",
      static_cast<int>(std::get<TreeRingPayload>(key.payload).target_channel), format_number(rlo),
      format_number(rhi), format_number(ilo), format_number(ihi));
  write_file(prefix + "_mapping.txt", std::vector<std::uint8_t>(side.begin(), side.end()));
  out << prefix << "_real.png\n" << prefix << "_imag.png\n" << prefix << "_mapping.txt\n";
  return kExitOk;
}

struct FixtureArgs {
  std::string out;
  int count = 10;
  int side = 256;
  std::uint64_t seed = 0;
};

int cmd_fixture(const FixtureArgs& a, std::ostream& out) {
  write_synthetic_corpus(a.out, static_cast<std::size_t>(a.count), a.side, Seed{a.seed});
  out << fmt::format("wrote {} images to {}\n", a.count, a.out);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Watermark robustness benchmark"};
  app.name("wmbench");
  app.require_subcommand(1);
  app.set_version_flag("--version", "wmbench 0.1.0");

  KeygenArgs kg;
  auto* keygen = app.add_subcommand("keygen", "Generate a watermark key");
  keygen->add_option("--scheme", kg.scheme)->required()->check(CLI::IsMember(kSchemeNames));
  keygen->add_option("--pattern", kg.pattern, "Tree-Ring pattern")->check(CLI::IsMember({"ring", "rand", "zeros"}));
  keygen->add_option("--seed", kg.seed)->required();
  keygen->add_option("--out", kg.out)->required();
  keygen->add_option("--payload-bits", kg.payload_bits)->check(CLI::Range(1, 4096));
  keygen->add_option("--embed-strength", kg.embed_strength, "DwtDctSvd lattice step");
  keygen->add_option("--sigma", kg.sigma, "Gaussian Shading mark amplitude");

  EmbedArgs em;
  auto* embed = app.add_subcommand("embed", "Watermark every image in a directory");
  embed->add_option("--scheme", em.scheme)->required()->check(CLI::IsMember(kSchemeNames));
  embed->add_option("--key", em.key)->required();
  embed->add_option("--in", em.in)->required();
  embed->add_option("--out", em.out)->required();
  embed->add_option("--transport", em.transport)->check(CLI::IsMember({"identity", "toy"}));
  embed->add_option("--workers", em.workers);

  AttackArgs at;
  auto* attack = app.add_subcommand("attack", "Apply one attack to every image in a directory");
  attack->add_option("--kind", at.kind)->required()->check(CLI::IsMember(kAttackNames));
  attack->add_option("--factor", at.spec.factor, "brightness factor");
  attack->add_option("--angle", at.spec.angle_degrees, "rotation in degrees");
  attack->add_option("--quality", at.spec.quality, "JPEG quality");
  attack->add_option("--sigma", at.spec.sigma, "noise standard deviation");
  attack->add_option("--strength", at.spec.strength, "paraphrase strength");
  attack->add_option("--guidance", at.spec.guidance, "paraphrase guidance scale");
  attack->add_option("--backend", at.backend)->check(CLI::IsMember({"surrogate", "external"}));
  attack->add_option("--in", at.in)->required();
  attack->add_option("--out", at.out)->required();
  attack->add_option("--seed", at.seed)->required();
  attack->add_option("--paraphrase-url", at.paraphrase_url);
  attack->add_option("--workers", at.workers);

  DetectArgs de;
  auto* detect = app.add_subcommand("detect", "Score every image in a directory");
  detect->add_option("--scheme", de.scheme)->required()->check(CLI::IsMember(kSchemeNames));
  detect->add_option("--key", de.key)->required();
  detect->add_option("--in", de.in)->required();
  detect->add_option("--out", de.out, "output CSV, - for standard output")->required();
  detect->add_option("--transport", de.transport)->check(CLI::IsMember({"identity", "toy"}));
  detect->add_option("--workers", de.workers);
  auto* thr = detect->add_option_group("threshold", "exactly one of --tau, --calibration");
  thr->add_option("--tau", de.tau);
  thr->add_option("--calibration", de.calibration);
  thr->require_option(1);

  CalibrateArgs ca;
  auto* calibrate = app.add_subcommand("calibrate", "Pick tau at a target false-positive rate");
  calibrate->add_option("--scheme", ca.scheme)->required()->check(CLI::IsMember(kSchemeNames));
  calibrate->add_option("--key", ca.key)->required();
  calibrate->add_option("--negatives", ca.negatives)->required();
  calibrate->add_option("--fpr", ca.fpr)->required()->check(CLI::Range(0.0, 1.0));
  calibrate->add_option("--out", ca.out)->required();
  calibrate->add_option("--n-negatives", ca.n_negatives, "top up to this many with crops and flips");
  calibrate->add_option("--seed", ca.seed, "augmentation seed");
  calibrate->add_option("--transport", ca.transport)->check(CLI::IsMember({"identity", "toy"}));
  calibrate->add_option("--workers", ca.workers);

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Run an experiment from a JSON config");
  eval->add_option("--config", ev.config)->required();
  eval->add_option("--workers", ev.workers);
  eval->add_option("--paraphrase-url", ev.paraphrase_url);

  std::string strip_in, strip_out;
  auto* strip = app.add_subcommand("strip-metadata", "Remove ancillary PNG chunks / JPEG segments");
  strip->add_option("file", strip_in)->required();
  strip->add_option("--out", strip_out)->required();

  std::string fk_key, fk_prefix;
  auto* fourier = app.add_subcommand("dump-key-fourier", "Write a Tree-Ring key's spectrum as PNGs");
  fourier->add_option("--key", fk_key)->required();
  fourier->add_option("--out-prefix", fk_prefix)->required();

  FixtureArgs fx;
  auto* fixture = app.add_subcommand("make-fixture", "Write a synthetic image corpus");
  fixture->add_option("--out", fx.out)->required();
  fixture->add_option("--count", fx.count)->check(CLI::Range(1, 100000));
  fixture->add_option("--side", fx.side)->check(CLI::Range(8, 8192));
  fixture->add_option("--seed", fx.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    out << sub->help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "wmbench 0.1.0\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitUsage;
  }

  try {
    if (keygen->parsed()) return cmd_keygen(kg, out);
    if (embed->parsed()) return cmd_embed(em, out, err);
    if (attack->parsed()) return cmd_attack(at, out, err);
    if (detect->parsed()) return cmd_detect(de, out, err);
    if (calibrate->parsed()) return cmd_calibrate(ca, out, err);
    if (eval->parsed()) return cmd_eval(ev, out, err);
    if (strip->parsed()) return cmd_strip(strip_in, strip_out, out);
    if (fourier->parsed()) return cmd_dump_fourier(fk_key, fk_prefix, out);
    if (fixture->parsed()) return cmd_fixture(fx, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"wmbench"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace wmbench::cli
