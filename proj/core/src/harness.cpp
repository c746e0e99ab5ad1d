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

#include "wmbench/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "wmbench/error.hpp"
#include "wmbench/image_io.hpp"
#include "wmbench/latent.hpp"
#include "wmbench/metrics.hpp"
#include "wmbench/paraphrase_client.hpp"

namespace wmbench {

using json = nlohmann::json;
namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Parallelism

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < w; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mu);
            if (!error) error = std::current_exception();
          }
        }
      });
  }
  if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// Dataset

std::vector<IngestedImage> ingest_dataset(const fs::path& dir, int resize_to, std::size_t n_images, Seed seed) {
  require(resize_to >= 8, "resize_to must be at least 8");
  require(n_images >= 1, "n_images must be at least 1");
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) fail(ErrorCode::kIo, "dataset directory not found: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && has_image_extension(entry.path())) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  Rng rng(seed);
  for (std::size_t i = files.size(); i > 1; --i) std::swap(files[i - 1], files[rng.below(i)]);

  std::vector<IngestedImage> out;
  for (const auto& f : files) {
    if (out.size() == n_images) break;
    Image img;
    try {
      img = load_image(f);
    } catch (const Error&) {
      continue;  // unreadable files do not count towards n_images
    }
    img = center_crop_square(to_rgb(img));
    if (img.width != resize_to) img = resize_bilinear(img, resize_to, resize_to);
    clamp_unit(img);
    out.push_back({f.stem().string(), std::move(img)});
  }
  if (out.size() < n_images)
    fail(ErrorCode::kInsufficientData, fmt::format("dataset {} has {} readable images, {} requested", dir.string(),
                                                   out.size(), n_images));
  return out;
}

std::vector<Image> augment_negatives(const std::vector<Image>& pool, std::size_t count, Seed seed) {
  require(!pool.empty(), "negative pool is empty");
  std::vector<Image> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const Image& src = pool[k % pool.size()];
    if (k < pool.size()) {
      out.push_back(src);
      continue;
    }
    Rng rng(derive_seed(seed, {k}));
    const double frac = 0.6 + 0.4 * rng.uniform();
    const int cw = std::max(8, static_cast<int>(frac * src.width));
    const int ch = std::max(8, static_cast<int>(frac * src.height));
    const int ox = static_cast<int>(rng.below(static_cast<std::uint64_t>(src.width - cw + 1)));
    const int oy = static_cast<int>(rng.below(static_cast<std::uint64_t>(src.height - ch + 1)));
    const bool flip = rng.below(2) == 1;
    Image crop(cw, ch, src.channels);
    for (int c = 0; c < src.channels; ++c)
      for (int y = 0; y < ch; ++y)
        for (int x = 0; x < cw; ++x) crop.at(c, y, x) = src.at(c, oy + y, flip ? ox + cw - 1 - x : ox + x);
    out.push_back(resize_bilinear(crop, src.width, src.height));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Calibration

CalibrationRecord calibrate_threshold(SchemeId scheme, std::vector<double> stats, double fpr_target) {
  require(fpr_target > 0.0 && fpr_target < 1.0, "fpr_target must be in (0, 1)");
  if (stats.size() < kMinNegatives)
    fail(ErrorCode::kInsufficientData,
         fmt::format("calibration needs at least {} negatives, got {}", kMinNegatives, stats.size()));
  for (double s : stats) require(std::isfinite(s), "negative statistic is not finite");
  std::sort(stats.begin(), stats.end());
  const std::size_t n = stats.size();
  auto k = static_cast<std::size_t>(std::ceil((1.0 - fpr_target) * static_cast<double>(n) - 1e-9));
  k = std::clamp<std::size_t>(k, 1, n);

  CalibrationRecord r;
  r.scheme = scheme;
  r.fpr_target = fpr_target;
  r.n_negatives = n;
  r.tau = std::nextafter(stats[k - 1], INFINITY);
  r.false_positives = static_cast<std::size_t>(std::count_if(stats.begin(), stats.end(), [&](double s) { return s >= r.tau; }));
  r.degenerate = stats.front() == stats.back();
  for (double q : {0.0, 0.25, 0.5, 0.75, 0.95, 0.99, 1.0}) {
    const auto idx = static_cast<std::size_t>(std::lround(q * static_cast<double>(n - 1)));
    r.negative_quantiles.push_back(stats[idx]);
  }
  return r;
}

CalibrationRecord calibrate_threshold(const Scheme& scheme, const std::vector<Image>& negatives, double fpr_target,
                                      int workers) {
  std::vector<double> stats(negatives.size());
  parallel_for(negatives.size(), workers, [&](std::size_t i) { stats[i] = scheme.statistic(negatives[i]); });
  return calibrate_threshold(scheme.id(), std::move(stats), fpr_target);
}

std::string calibration_to_json(const CalibrationRecord& r) {
  // Doubles are written with 17 significant digits so tau survives a
  // roundtrip exactly.
  std::string q;
  for (std::size_t i = 0; i < r.negative_quantiles.size(); ++i)
    q += fmt::format("{}{:.17g}", i ? ", " : "", r.negative_quantiles[i]);
  return fmt::format(
      "{{\n  \"scheme\": \"{}\",\n  \"tau\": {:.17g},\n  \"fpr_target\": {:.17g},\n  \"n_negatives\": {},\n"
      "  \"false_positives\": {},\n  \"degenerate\": {},\n  \"negative_quantiles\": [{}]\n}}\n",
      scheme_name(r.scheme), r.tau, r.fpr_target, r.n_negatives, r.false_positives, r.degenerate, q);
}

CalibrationRecord calibration_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    CalibrationRecord r;
    r.scheme = parse_scheme(j.at("scheme").get<std::string>());
    r.tau = j.at("tau").get<double>();
    r.fpr_target = j.at("fpr_target").get<double>();
    r.n_negatives = j.at("n_negatives").get<std::size_t>();
    r.false_positives = j.value("false_positives", std::size_t{0});
    r.degenerate = j.value("degenerate", false);
    r.negative_quantiles = j.value("negative_quantiles", std::vector<double>{});
    return r;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::kCorrupt, std::string("malformed calibration record: ") + e.what());
  }
}

void save_calibration(const CalibrationRecord& r, const fs::path& path) {
  const std::string s = calibration_to_json(r);
  write_file(path, {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()});
}

CalibrationRecord load_calibration(const fs::path& path) {
  const auto bytes = read_file(path);
  return calibration_from_json(std::string(bytes.begin(), bytes.end()));
}

// ---------------------------------------------------------------------------
// Config

std::vector<double> default_strengths() { return {0.2, 0.4, 0.6, 0.8, 1.0}; }

std::vector<AttackSpec> default_attacks() {
  std::vector<AttackSpec> out;
  AttackSpec a;
  a.kind = AttackKind::kBrightness;
  out.push_back(a);
  for (double angle : {45.0, -45.0}) {
    a = {};
    a.kind = AttackKind::kRotation;
    a.angle_degrees = angle;
    out.push_back(a);
  }
  a = {};
  a.kind = AttackKind::kJpeg;
  out.push_back(a);
  a = {};
  a.kind = AttackKind::kNoise;
  out.push_back(a);
  for (double s : default_strengths()) {
    a = {};
    a.kind = AttackKind::kParaphrase;
    a.strength = s;
    out.push_back(a);
  }
  return out;
}

void ExperimentConfig::validate() const {
  require(n_images >= 1, "n_images must be at least 1");
  require(fpr_target > 0.0 && fpr_target < 1.0, "fpr_target must be in (0, 1)");
  require(n_negatives >= kMinNegatives, fmt::format("n_negatives must be at least {}", kMinNegatives));
  require(resize_to >= 8, "resize_to must be at least 8");
  require(!schemes.empty(), "config lists no schemes");
  require(!output_dir.empty(), "config needs an output_dir");
  for (const auto& a : attacks) a.validate();
}

namespace {

std::vector<json> values_of(const json& v) {
  if (v.is_array()) {
    require(!v.empty(), "empty parameter list in config");
    return std::vector<json>(v.begin(), v.end());
  }
  return {v};
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [k, _] : obj.items())
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }) == allowed.end())
      fail(ErrorCode::kInvalidArgument, "unknown key '" + k + "' in " + where);
}

std::vector<AttackSpec> expand_attack(const json& j) {
  check_keys(j, {"kind", "factor", "angle", "quality", "sigma", "strength", "guidance", "backend"}, "attack");
  AttackSpec base;
  base.kind = parse_attack_kind(j.at("kind").get<std::string>());
  std::vector<AttackSpec> grid{base};
  const auto expand = [&](const char* key, auto setter) {
    if (!j.contains(key)) return;
    std::vector<AttackSpec> next;
    for (const auto& spec : grid)
      for (const auto& v : values_of(j.at(key))) {
        AttackSpec s = spec;
        setter(s, v);
        next.push_back(s);
      }
    grid = std::move(next);
  };
  expand("factor", [](AttackSpec& s, const json& v) { s.factor = v.get<double>(); });
  expand("angle", [](AttackSpec& s, const json& v) { s.angle_degrees = v.get<double>(); });
  expand("quality", [](AttackSpec& s, const json& v) { s.quality = v.get<int>(); });
  expand("sigma", [](AttackSpec& s, const json& v) { s.sigma = v.get<double>(); });
  expand("strength", [](AttackSpec& s, const json& v) { s.strength = v.get<double>(); });
  expand("guidance", [](AttackSpec& s, const json& v) { s.guidance = v.get<double>(); });
  expand("backend", [](AttackSpec& s, const json& v) { s.backend = parse_backend(v.get<std::string>()); });
  // Defaults that come in pairs or sweeps.
  if (base.kind == AttackKind::kRotation && !j.contains("angle")) {
    grid.clear();
    for (double a : {45.0, -45.0}) {
      AttackSpec s = base;
      s.angle_degrees = a;
      grid.push_back(s);
    }
  }
  if (base.kind == AttackKind::kParaphrase && !j.contains("strength")) {
    std::vector<AttackSpec> next;
    for (const auto& spec : grid)
      for (double s : default_strengths()) {
        AttackSpec x = spec;
        x.strength = s;
        next.push_back(x);
      }
    grid = std::move(next);
  }
  return grid;
}

SchemeConfig parse_scheme_config(const json& j, const fs::path& base) {
  SchemeConfig sc;
  if (j.is_string()) {
    sc.id = parse_scheme(j.get<std::string>());
    return sc;
  }
  check_keys(j,
             {"scheme", "key", "payload_bits", "embed_strength", "subband", "pattern", "ring_edges", "sigma",
              "transport"},
             "scheme");
  sc.id = parse_scheme(j.at("scheme").get<std::string>());
  if (j.contains("key")) sc.key_path = (base / j.at("key").get<std::string>()).lexically_normal();
  auto& k = sc.keygen;
  k.payload_bits = j.value("payload_bits", k.payload_bits);
  k.dwtdctsvd.embed_strength = j.value("embed_strength", k.dwtdctsvd.embed_strength);
  if (j.contains("subband")) {
    const auto s = j.at("subband").get<std::string>();
    if (s == "LL") k.dwtdctsvd.subband = Subband::kLL;
    else if (s == "HL") k.dwtdctsvd.subband = Subband::kHL;
    else if (s == "LH") k.dwtdctsvd.subband = Subband::kLH;
    else fail(ErrorCode::kInvalidArgument, "unknown subband '" + s + "'");
  }
  if (j.contains("pattern")) k.pattern = parse_ring_pattern(j.at("pattern").get<std::string>());
  k.ring_edges = j.value("ring_edges", k.ring_edges);
  k.shading.sigma = j.value("sigma", k.shading.sigma);
  sc.transport = j.value("transport", sc.transport);
  return sc;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const fs::path& base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::kInvalidArgument, std::string("config is not valid JSON: ") + e.what());
  }
  try {
    require(j.is_object(), "config must be a JSON object");
    check_keys(j,
               {"dataset_dir", "resize_to", "schemes", "attacks", "n_images", "seed", "fpr_target", "n_negatives",
                "output_dir", "workers", "paraphrase_url"},
               "config");
    ExperimentConfig c;
    if (j.contains("dataset_dir")) c.dataset_dir = (base / j.at("dataset_dir").get<std::string>()).lexically_normal();
    c.resize_to = j.value("resize_to", c.resize_to);
    c.n_images = j.value("n_images", c.n_images);
    c.seed = Seed{j.value("seed", std::uint64_t{0})};
    c.fpr_target = j.value("fpr_target", c.fpr_target);
    c.n_negatives = j.value("n_negatives", c.n_negatives);
    c.output_dir = (base / j.at("output_dir").get<std::string>()).lexically_normal();
    c.workers = j.value("workers", c.workers);
    if (j.contains("paraphrase_url")) c.paraphrase_url = j.at("paraphrase_url").get<std::string>();
    for (const auto& s : j.at("schemes")) c.schemes.push_back(parse_scheme_config(s, base));
    if (j.contains("attacks")) {
      for (const auto& a : j.at("attacks")) {
        auto grid = expand_attack(a);
        c.attacks.insert(c.attacks.end(), grid.begin(), grid.end());
      }
    } else {
      c.attacks = default_attacks();
    }
    c.validate();
    return c;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::kInvalidArgument, std::string("bad config: ") + e.what());
  }
}

ExperimentConfig load_config(const fs::path& path) {
  const auto bytes = read_file(path);
  return parse_config(std::string(bytes.begin(), bytes.end()), path.parent_path());
}

// ---------------------------------------------------------------------------
// Experiment

namespace {

std::string column_label(const AttackSpec& a) {
  switch (a.kind) {
    case AttackKind::kNone: return "Pre-Attack";
    case AttackKind::kBrightness: return a.factor == 2.0 ? "Brightness" : fmt::format("Brightness x{:g}", a.factor);
    case AttackKind::kRotation: return "Rotation";
    case AttackKind::kJpeg: return a.quality == 50 ? "JPEG" : fmt::format("JPEG q{}", a.quality);
    case AttackKind::kNoise: return a.sigma == 0.05 ? "Noise" : fmt::format("Noise {:g}", a.sigma);
    case AttackKind::kStripMetadata: return "Strip metadata";
    case AttackKind::kParaphrase: {
      std::string s = fmt::format("VP s={:g}", a.strength);
      if (a.guidance != 7.5) s += fmt::format(" gs={:g}", a.guidance);
      if (a.backend == ParaphraseBackend::kExternal) s += " (ext)";
      return s;
    }
  }
  return "?";
}

void write_text(const fs::path& path, const std::string& text) {
  write_file(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return NAN;
  double s = 0.0;
  for (double x : v) {
    if (std::isinf(x)) return x;
    s += x;
  }
  return s / static_cast<double>(v.size());
}

struct Host {
  std::string id;
  Image original;
  Image watermarked;
};

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, const ProgressFn& progress) {
  config.validate();
  const auto say = [&](const std::string& msg) {
    if (progress) progress(msg);
  };
  ExperimentResult result;
  fs::create_directories(config.output_dir / "outcomes");
  fs::create_directories(config.output_dir / "keys");
  fs::create_directories(config.output_dir / "calibration");

  std::shared_ptr<const ServiceClient> client;
  std::string client_error = "no paraphrase service URL configured";
  const auto url = config.paraphrase_url ? config.paraphrase_url : ServiceClient::url_from_env();
  if (url) {
    try {
      auto c = std::make_shared<ServiceClient>(*url);
      c->health();
      client = std::move(c);
    } catch (const Error& e) {
      client_error = std::string("paraphrase service unavailable: ") + e.what();
    }
  }

  // Pixel schemes share one ingested corpus and one negative pool.
  std::vector<IngestedImage> corpus;
  std::vector<Image> pixel_negatives;
  const bool need_corpus = std::any_of(config.schemes.begin(), config.schemes.end(),
                                       [](const SchemeConfig& s) { return s.id == SchemeId::kDwtDctSvd; });
  if (need_corpus) {
    corpus = ingest_dataset(config.dataset_dir, config.resize_to, config.n_images, config.seed);
    std::vector<Image> pool;
    for (const auto& c : corpus) pool.push_back(c.image);
    pixel_negatives = augment_negatives(pool, config.n_negatives, derive_seed(config.seed, {0x6e6567}));
    say(fmt::format("ingested {} images from {}", corpus.size(), config.dataset_dir.string()));
  }

  std::vector<AttackSpec> rows_spec{AttackSpec{}};
  rows_spec.insert(rows_spec.end(), config.attacks.begin(), config.attacks.end());

  for (const auto& sc : config.schemes) {
    const std::string name(scheme_name(sc.id));
    const auto skip_all = [&](const std::string& reason) {
      for (const auto& a : rows_spec)
        result.skipped.push_back({name, std::string(attack_kind_name(a.kind)), a.params_label(), reason});
    };

    WatermarkKey key;
    std::unique_ptr<Scheme> scheme;
    try {
      if (sc.key_path) {
        key = key_load(*sc.key_path);
        expect_scheme(key, sc.id);
      } else {
        key = generate_key(sc.id, derive_seed(config.seed, {0x6b6579, static_cast<std::uint64_t>(sc.id)}), sc.keygen);
      }
      std::shared_ptr<const LatentTransport> transport;
      if (sc.id != SchemeId::kDwtDctSvd)
        transport = make_transport(sc.transport, transport_seed(key.seed), client);
      scheme = make_scheme(key, transport);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kTransport) throw;
      skip_all(e.what());
      continue;
    }
    key_save(key, config.output_dir / "keys" / (name + ".wmk"));

    // Calibration.
    std::vector<Image> negatives;
    if (scheme->latent_based()) {
      negatives.resize(config.n_negatives);
      parallel_for(negatives.size(), config.workers, [&](std::size_t k) {
        negatives[k] = scheme->make_carrier(derive_seed(config.seed, {static_cast<std::uint64_t>(sc.id), 2, k}));
      });
    } else {
      negatives = pixel_negatives;
    }
    CalibrationRecord cal;
    try {
      cal = calibrate_threshold(*scheme, negatives, config.fpr_target, config.workers);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kTransport) throw;
      skip_all(e.what());
      continue;
    }
    negatives.clear();
    save_calibration(cal, config.output_dir / "calibration" / (name + ".json"));
    result.calibrations.push_back(cal);
    say(fmt::format("{}: tau = {:.6f} from {} negatives", name, cal.tau, cal.n_negatives));

    // Hosts and their watermarked versions.
    const std::size_t n = config.n_images;
    std::vector<std::optional<Host>> hosts(n);
    std::vector<std::string> embed_errors(n);
    parallel_for(n, config.workers, [&](std::size_t i) {
      Host h;
      try {
        if (scheme->latent_based()) {
          h.id = fmt::format("carrier-{:04d}", i);
          h.original = scheme->make_carrier(derive_seed(config.seed, {static_cast<std::uint64_t>(sc.id), 1, i}));
        } else {
          h.id = corpus[i].id;
          h.original = corpus[i].image;
        }
        h.watermarked = scheme->embed(h.original);
        hosts[i] = std::move(h);
      } catch (const Error& e) {
        embed_errors[i] = e.what();
      }
    });
    for (std::size_t i = 0; i < n; ++i)
      if (!hosts[i]) result.failures.push_back({name, "embed", "", scheme->latent_based() ? fmt::format("carrier-{:04d}", i) : corpus[i].id, embed_errors[i]});

    for (std::size_t row = 0; row < rows_spec.size(); ++row) {
      AttackSpec spec = rows_spec[row];
      const std::string attack(attack_kind_name(spec.kind));
      const std::string params = spec.params_label();
      if (spec.kind == AttackKind::kParaphrase && spec.backend == ParaphraseBackend::kExternal && !client) {
        result.skipped.push_back({name, attack, params, client_error});
        continue;
      }
      ++result.attempted_rows;

      std::vector<std::optional<ImageOutcome>> outcomes(n);
      std::vector<Image> attacked(n);
      std::vector<std::string> errors(n);
      parallel_for(n, config.workers, [&](std::size_t i) {
        if (!hosts[i]) return;
        const Host& h = *hosts[i];
        try {
          AttackSpec s = spec;
          s.seed = derive_seed(config.seed, {i, row});
          Image img = row == 0 ? h.watermarked : apply_attack(s, h.watermarked, client.get()).image;
          const Image& ref = row == 0 ? h.original : h.watermarked;
          ImageOutcome o;
          o.image_id = h.id;
          o.statistic = scheme->statistic(img);
          o.detected = decide(o.statistic, cal.tau).detected;
          o.psnr = psnr(img, ref);
          o.ssim = ssim(img, ref);
          outcomes[i] = o;
          attacked[i] = std::move(img);
        } catch (const Error& e) {
          errors[i] = e.what();
        }
      });

      std::vector<ImageOutcome> ok;
      std::vector<Image> before, after;
      bool row_failed = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (!hosts[i]) {
          row_failed = true;
          continue;
        }
        if (!outcomes[i]) {
          row_failed = true;
          result.failures.push_back({name, attack, params, hosts[i]->id, errors[i]});
          continue;
        }
        ok.push_back(*outcomes[i]);
        before.push_back(row == 0 ? hosts[i]->original : hosts[i]->watermarked);
        after.push_back(std::move(attacked[i]));
      }
      if (row_failed) ++result.failed_rows;

      ReportRow r;
      r.scheme = name;
      r.attack = attack;
      r.params = params;
      r.column = column_label(spec);
      r.n_images = ok.size();
      r.tau = cal.tau;
      std::vector<double> stats, ps, ss;
      std::size_t detected = 0;
      for (const auto& o : ok) {
        stats.push_back(o.statistic);
        ps.push_back(o.psnr);
        ss.push_back(o.ssim);
        detected += o.detected;
      }
      r.mean_statistic = mean_of(stats);
      r.eta = ok.empty() ? NAN : static_cast<double>(detected) / static_cast<double>(ok.size());
      r.psnr_mean = mean_of(ps);
      r.ssim_mean = mean_of(ss);
      r.mmd = ok.size() >= 2 ? mmd_distortion(before, after, DctEmbedder{}) : NAN;
      result.rows.push_back(r);
      write_text(config.output_dir / "outcomes" / fmt::format("{}__{:02d}_{}.csv", name, row, attack), outcome_csv(ok));
      say(fmt::format("{} {} {}: eta = {:.3f}", name, attack, params, r.eta));
    }
  }

  write_text(config.output_dir / "report.csv", report_csv(result.rows));
  write_text(config.output_dir / "report.md", report_markdown(result.rows, result.skipped, result.failures));
  return result;
}

}  // namespace wmbench
