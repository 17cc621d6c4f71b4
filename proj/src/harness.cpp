// SPDX-License-Identifier: Apache-2.0
//
// codediv: code diversity simulation library for space-time block codes
// Copyright (C) 2026 The codediv authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "codediv/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "codediv/decoders.hpp"
#include "codediv/errors.hpp"
#include "codediv/parallel.hpp"
#include "json.hpp"

#ifndef CODEDIV_GIT_DESCRIBE
#define CODEDIV_GIT_DESCRIBE "unknown"
#endif

namespace codediv {
namespace {

using nlohmann::json;

constexpr const char* kFields[] = {"code",          "decoder",        "feedback",
                                   "k",             "k1",             "k2",
                                   "constellation_order",             "snr_grid_db",
                                   "convention",    "min_errors",     "max_frames",
                                   "seed",          "sir_gamma",      "receive_antennas",
                                   "circulant_order", "phase_sites",  "circulant_phase_step"};

constexpr const char* kDecoders[] = {"ml", "zf", "mu-zf", "mu-ml", "circ-fourier"};
constexpr const char* kFeedbacks[] = {"none", "generic", "closed-form", "multiuser", "golden", "circulant"};

template <std::size_t N>
bool one_of(const std::string& s, const char* const (&list)[N]) {
  return std::any_of(std::begin(list), std::end(list), [&](const char* x) { return s == x; });
}

std::string get_string(const json& j, const char* key) {
  if (!j.is_string()) throw ConfigError(key, "expected a string");
  return j.get<std::string>();
}

std::uint64_t get_uint(const json& j, const char* key) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) throw ConfigError(key, "must be non-negative");
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (v >= 0.0 && v == std::floor(v) && v < 1.8e19) return static_cast<std::uint64_t>(v);
  }
  throw ConfigError(key, "expected a non-negative integer");
}

unsigned get_small(const json& j, const char* key) {
  const std::uint64_t v = get_uint(j, key);
  if (v > 1u << 20) throw ConfigError(key, "value too large");
  return static_cast<unsigned>(v);
}

double get_real(const json& j, const char* key) {
  if (!j.is_number()) throw ConfigError(key, "expected a number");
  return j.get<double>();
}

json to_json(const ExperimentConfig& c) {
  return json{{"code", c.code},
              {"decoder", c.decoder},
              {"feedback", c.feedback},
              {"k", c.k},
              {"k1", c.k1},
              {"k2", c.k2},
              {"constellation_order", c.constellation_order},
              {"snr_grid_db", c.snr_grid_db},
              {"convention", c.convention},
              {"min_errors", c.min_errors},
              {"max_frames", c.max_frames},
              {"seed", c.seed},
              {"sir_gamma", c.sir_gamma},
              {"receive_antennas", c.receive_antennas},
              {"circulant_order", c.circulant_order},
              {"phase_sites", c.phase_sites},
              {"circulant_phase_step", c.circulant_phase_step}};
}

void assign_field(ExperimentConfig& c, const std::string& key, const json& v) {
  const char* k = key.c_str();
  if (key == "code") c.code = get_string(v, k);
  else if (key == "decoder") c.decoder = get_string(v, k);
  else if (key == "feedback") c.feedback = get_string(v, k);
  else if (key == "k") c.k = get_small(v, k);
  else if (key == "k1") c.k1 = get_small(v, k);
  else if (key == "k2") c.k2 = get_small(v, k);
  else if (key == "constellation_order") c.constellation_order = get_small(v, k);
  else if (key == "snr_grid_db") {
    if (!v.is_array()) throw ConfigError(k, "expected an array of numbers");
    c.snr_grid_db.clear();
    for (const json& x : v) c.snr_grid_db.push_back(get_real(x, k));
  } else if (key == "convention") c.convention = get_string(v, k);
  else if (key == "min_errors") c.min_errors = get_uint(v, k);
  else if (key == "max_frames") c.max_frames = get_uint(v, k);
  else if (key == "seed") c.seed = get_uint(v, k);
  else if (key == "sir_gamma") c.sir_gamma = get_real(v, k);
  else if (key == "receive_antennas") c.receive_antennas = get_small(v, k);
  else if (key == "circulant_order") c.circulant_order = get_small(v, k);
  else if (key == "phase_sites") c.phase_sites = get_small(v, k);
  else if (key == "circulant_phase_step") c.circulant_phase_step = get_string(v, k);
  else throw ConfigError(key, "unknown field");
}

bool is_multiuser_decoder(const std::string& d) { return d == "mu-zf" || d == "mu-ml"; }

FeedbackConfig feedback_config(const ExperimentConfig& c) {
  using Kind = FeedbackConfig::Kind;
  FeedbackConfig fb;
  if (c.feedback == "none") fb.kind = Kind::None;
  else if (c.feedback == "generic") fb.kind = Kind::Generic;
  else if (c.feedback == "closed-form") fb.kind = Kind::ClosedForm;
  else if (c.feedback == "multiuser") fb.kind = Kind::Multiuser;
  else if (c.feedback == "golden") fb.kind = Kind::Golden;
  else fb.kind = Kind::Circulant;
  fb.levels = c.k;
  fb.levels2 = c.k2;
  fb.phase_sites = c.phase_sites;
  fb.step = c.circulant_phase_step == "2pi/K" ? CirculantPhaseStep::FullTurnOverK
                                              : CirculantPhaseStep::HalfTurnOverK;
  return fb;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
  ExperimentConfig cfg;
  for (auto it = j.begin(); it != j.end(); ++it) assign_field(cfg, it.key(), it.value());
  validate_config(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const ExperimentConfig& cfg, int indent) { return to_json(cfg).dump(indent); }

void apply_override(ExperimentConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError(std::string(assignment), "override must look like key=value");
  }
  const std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  if (std::find_if(std::begin(kFields), std::end(kFields), [&](const char* f) { return key == f; }) ==
      std::end(kFields)) {
    throw ConfigError(key, "unknown field");
  }
  json v = json::parse(text, nullptr, false);
  if (v.is_discarded()) v = text;
  assign_field(cfg, key, v);
}

void validate_config(const ExperimentConfig& c) {
  const auto& names = CodeSpec::names();
  if (std::find(names.begin(), names.end(), c.code) == names.end()) {
    throw ConfigError("code", "unknown code '" + c.code + "'");
  }
  if (!one_of(c.decoder, kDecoders)) throw ConfigError("decoder", "unknown decoder '" + c.decoder + "'");
  if (!one_of(c.feedback, kFeedbacks)) throw ConfigError("feedback", "unknown feedback '" + c.feedback + "'");
  if (c.k < 1) throw ConfigError("k", "must be at least 1");
  if (c.k1 < 1) throw ConfigError("k1", "must be at least 1");
  if (c.k2 < 1) throw ConfigError("k2", "must be at least 1");
  if (c.constellation_order != 4 && c.constellation_order != 16) {
    throw ConfigError("constellation_order", "must be 4 or 16");
  }
  if (c.snr_grid_db.empty()) throw ConfigError("snr_grid_db", "must not be empty");
  for (double s : c.snr_grid_db) {
    if (!std::isfinite(s)) throw ConfigError("snr_grid_db", "entries must be finite");
  }
  SnrConvention conv;
  try {
    conv = parse_convention(c.convention);
  } catch (const std::exception&) {
    throw ConfigError("convention", "unknown convention '" + c.convention + "'");
  }
  if (c.min_errors < 1) throw ConfigError("min_errors", "must be at least 1");
  if (c.max_frames < 1) throw ConfigError("max_frames", "must be at least 1");
  if (!(c.sir_gamma > 0.0) || !std::isfinite(c.sir_gamma)) throw ConfigError("sir_gamma", "must be positive");
  if (c.receive_antennas < 1 || c.receive_antennas > 4) throw ConfigError("receive_antennas", "must be 1..4");
  if (c.circulant_order < 2 || c.circulant_order > 8) throw ConfigError("circulant_order", "must be 2..8");
  if (c.circulant_phase_step != "pi/K" && c.circulant_phase_step != "2pi/K") {
    throw ConfigError("circulant_phase_step", "must be \"pi/K\" or \"2pi/K\"");
  }

  const CodeSpec code = CodeSpec::from_name(c.code, c.circulant_order);
  if (c.phase_sites < 1 || c.phase_sites > code.antennas()) {
    throw ConfigError("phase_sites", "must be between 1 and the transmit antenna count");
  }
  const bool mu = is_multiuser_decoder(c.decoder);
  if (mu) {
    if (c.code != "alamouti") throw ConfigError("decoder", c.decoder + " needs the alamouti code");
    if (c.feedback != "none" && c.feedback != "multiuser") {
      throw ConfigError("feedback", "multi-user runs take feedback none or multiuser");
    }
    if (conv != SnrConvention::PerModelEq) throw ConfigError("convention", "multi-user runs use per-model-eq");
  } else if (c.feedback == "multiuser") {
    throw ConfigError("feedback", "multiuser feedback needs decoder mu-zf or mu-ml");
  }
  if (c.decoder == "circ-fourier" && (!code.is_circulant() || c.receive_antennas != 1)) {
    throw ConfigError("decoder", "circ-fourier needs a circulant code and one receive antenna");
  }
  if (c.feedback == "closed-form" && (code.id() != CodeId::Qostbc || c.receive_antennas != 1)) {
    throw ConfigError("feedback", "closed-form feedback needs qostbc with one receive antenna");
  }
  if (c.feedback == "circulant" && (!code.is_circulant() || c.receive_antennas != 1)) {
    throw ConfigError("feedback", "circulant feedback needs a circulant code and one receive antenna");
  }
  if (c.feedback == "golden" && code.id() != CodeId::GoldenCd) {
    throw ConfigError("feedback", "golden feedback needs code golden-cd");
  }
  if (code.id() == CodeId::GoldenCd && c.feedback != "golden") {
    throw ConfigError("feedback", "golden-cd selects its variant by golden feedback");
  }
  if (code.is_golden() && c.receive_antennas > 2) {
    throw ConfigError("receive_antennas", "Golden codes support 1 or 2 receive antennas");
  }
  if (code.is_circulant() && c.receive_antennas != 1) {
    throw ConfigError("receive_antennas", "circulant codes support one receive antenna");
  }
  if (conv == SnrConvention::QostbcFrobenius && (code.antennas() != 4 || c.receive_antennas != 1)) {
    throw ConfigError("convention", "qostbc-frobenius needs a 4-antenna code and one receive antenna");
  }
  if (conv == SnrConvention::GoldenEq && !code.is_golden()) {
    throw ConfigError("convention", "golden-eq needs a Golden code");
  }
  if (c.decoder == "ml" || c.decoder == "mu-ml") {
    const double l = mu ? 4.0 : static_cast<double>(code.symbols());
    if (std::pow(static_cast<double>(c.constellation_order), l) > static_cast<double>(kMlCandidateLimit)) {
      throw ConfigError("decoder", "ML candidate count exceeds 2^20; use zf");
    }
  }
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : to_json(cfg).dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double PointResult::ber() const noexcept {
  return bits ? static_cast<double>(bit_errors) / static_cast<double>(bits) : 0.0;
}

double PointResult::ser() const noexcept {
  return symbols ? static_cast<double>(symbol_errors) / static_cast<double>(symbols) : 0.0;
}

double PointResult::std_error() const noexcept {
  if (!bits) return 0.0;
  const double p = ber();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(bits));
}

void FrameCounts::merge(const FrameCounts& o) noexcept {
  bit_errors += o.bit_errors;
  symbol_errors += o.symbol_errors;
  bits += o.bits;
  symbols += o.symbols;
  frames += o.frames;
}

FrameSimulator::FrameSimulator(const ExperimentConfig& cfg)
    : cfg_((validate_config(cfg), cfg)),
      code_(CodeSpec::from_name(cfg.code, cfg.circulant_order)),
      q_(cfg.constellation_order),
      fb_(feedback_config(cfg)),
      convention_(parse_convention(cfg.convention)),
      multiuser_(is_multiuser_decoder(cfg.decoder)) {}

namespace {

void count_errors(const std::vector<unsigned>& sent, const std::vector<unsigned>& got, FrameCounts& out,
                  unsigned bits_per_symbol) {
  for (std::size_t i = 0; i < sent.size(); ++i) {
    const unsigned d = bit_distance(sent[i], got[i]);
    out.bit_errors += d;
    out.symbol_errors += d != 0;
  }
  out.bits += sent.size() * bits_per_symbol;
  out.symbols += sent.size();
}

}  // namespace

FrameCounts FrameSimulator::single_user(Rng& rng, double snr) const {
  const ChannelRealization ch = sample_channel(code_.antennas(), cfg_.receive_antennas, 1.0, rng);
  const FeedbackOutcome sel = apply_feedback(code_, ch.h, fb_);
  const ChannelRealization adapted{sel.h, ch.sigma2, ch.frame_index};
  const SnrScaling s = scale_for_snr({snr, convention_}, adapted, sel.code);

  const std::size_t l = sel.code.symbols();
  std::vector<unsigned> sent(l);
  CVec c(l);
  for (std::size_t j = 0; j < l; ++j) {
    sent[j] = static_cast<unsigned>(rng() & (q_.order() - 1));
    c[j] = q_.point(sent[j]);
  }

  CMat y = sel.h * sel.code.encode(c);
  y *= s.es_scale;
  ComplexGaussian noise;
  for (std::size_t i = 0; i < y.rows(); ++i)
    for (std::size_t t = 0; t < y.cols(); ++t) y(i, t) += noise(rng, s.n0);
  const CVec r = sel.code.receive(y);

  DecodeResult d;
  if (cfg_.decoder == "circ-fourier") {
    CVec row(sel.h.cols());
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = sel.h(0, j);
    const std::vector<double> w = sel.code.symbol_weights();
    d = circulant_fourier_decode(sel.code.circulant_base_row(row), r, q_, w, s.es_scale);
  } else if (cfg_.decoder == "zf") {
    d = zf_decode(sel.code.induce(sel.h), r, q_, s.es_scale);
  } else {
    d = ml_decode(sel.code.induce(sel.h), r, q_, s.es_scale);
  }

  FrameCounts out;
  count_errors(sent, d.labels, out, q_.bits_per_symbol());
  out.frames = 1;
  return out;
}

FrameCounts FrameSimulator::multi_user(Rng& rng, double snr) const {
  const double gamma = cfg_.sir_gamma;
  const double scale = std::sqrt(snr / 2.0);
  ComplexGaussian cg;
  for (;;) {
    TwoUserGains g;
    g.h11 = cg(rng, 1.0);
    g.h21 = cg(rng, 1.0);
    g.g12 = cg(rng, 1.0);
    g.g22 = cg(rng, 1.0);
    g.h12 = cg(rng, gamma);
    g.h22 = cg(rng, gamma);
    g.g11 = cg(rng, gamma);
    g.g21 = cg(rng, gamma);
    const TwoUserBlocks b = fb_.kind == FeedbackConfig::Kind::Multiuser
                                ? apply_multiuser(g, select_multiuser(g, cfg_.k1, cfg_.k2))
                                : two_user_blocks(g);

    std::vector<unsigned> sent(4);
    CVec c(4);
    for (std::size_t j = 0; j < 4; ++j) {
      sent[j] = static_cast<unsigned>(rng() & (q_.order() - 1));
      c[j] = q_.point(sent[j]);
    }
    const CVec c1{c[0], c[1]};
    const CVec c2{c[2], c[3]};
    CVec r1 = b.h1 * c1;
    CVec r2 = b.h2 * c1;
    const CVec i1 = b.g1 * c2;
    const CVec i2 = b.g2 * c2;
    for (std::size_t i = 0; i < 2; ++i) {
      r1[i] = scale * (r1[i] + i1[i]) + cg(rng, 1.0);
      r2[i] = scale * (r2[i] + i2[i]) + cg(rng, 1.0);
    }

    std::pair<DecodeResult, DecodeResult> d;
    try {
      d = cfg_.decoder == "mu-zf" ? mu_zf_decode(r1, r2, b, q_, scale) : mu_ml_decode(r1, r2, b, q_, scale);
    } catch (const IllConditioned&) {
      continue;  // singular H1 or G2: redraw the frame
    }
    std::vector<unsigned> got{d.first.labels[0], d.first.labels[1], d.second.labels[0], d.second.labels[1]};
    FrameCounts out;
    count_errors(sent, got, out, q_.bits_per_symbol());
    out.frames = 1;
    return out;
  }
}

FrameCounts FrameSimulator::run_frame(Rng& rng, double snr_db) const {
  const double snr = db_to_linear(snr_db);
  return multiuser_ ? multi_user(rng, snr) : single_user(rng, snr);
}

FrameCounts FrameSimulator::run_block(std::size_t point, std::uint64_t block, std::uint64_t frames) const {
  Rng rng = block_rng(cfg_.seed, point, block);
  FrameCounts acc;
  const double snr_db = cfg_.snr_grid_db.at(point);
  for (std::uint64_t f = 0; f < frames; ++f) acc.merge(run_frame(rng, snr_db));
  return acc;
}

namespace {

std::uint64_t frames_in_block(const ExperimentConfig& cfg, std::uint64_t block) {
  const std::uint64_t start = block * kFramesPerBlock;
  return start >= cfg.max_frames ? 0 : std::min(kFramesPerBlock, cfg.max_frames - start);
}

bool point_done(const ExperimentConfig& cfg, const FrameCounts& c) {
  return c.bit_errors >= cfg.min_errors || c.frames >= cfg.max_frames;
}

PointResult to_point(double snr_db, const FrameCounts& c) {
  return {snr_db, c.bit_errors, c.symbol_errors, c.bits, c.symbols, c.frames};
}

}  // namespace

ExperimentResult run_ber_serial(const ExperimentConfig& cfg) {
  const FrameSimulator sim(cfg);
  ExperimentResult out{{}, config_hash(cfg), cfg.seed};
  for (std::size_t p = 0; p < cfg.snr_grid_db.size(); ++p) {
    FrameCounts acc;
    for (std::uint64_t b = 0; !point_done(cfg, acc); ++b) {
      acc.merge(sim.run_block(p, b, frames_in_block(cfg, b)));
    }
    out.points.push_back(to_point(cfg.snr_grid_db[p], acc));
  }
  return out;
}

ExperimentResult run_ber(const ExperimentConfig& cfg, int workers) {
  const FrameSimulator sim(cfg);
  const int w = workers > 0 ? workers : available_workers();
  const std::uint64_t wave = static_cast<std::uint64_t>(w) * 2;
  ExperimentResult out{{}, config_hash(cfg), cfg.seed};
  for (std::size_t p = 0; p < cfg.snr_grid_db.size(); ++p) {
    FrameCounts acc;
    std::vector<FrameCounts> partial(wave);
    for (std::uint64_t first = 0; !point_done(cfg, acc); first += wave) {
      for_each_block(0, wave, w, [&](std::size_t i) {
        const std::uint64_t n = frames_in_block(cfg, first + i);
        partial[i] = n ? sim.run_block(p, first + i, n) : FrameCounts{};
      });
      // Ordered aggregation with the serial stopping rule; later blocks of
      // the wave are discarded once the point is done.
      for (std::uint64_t i = 0; i < wave && !point_done(cfg, acc); ++i) acc.merge(partial[i]);
    }
    out.points.push_back(to_point(cfg.snr_grid_db[p], acc));
  }
  return out;
}

CapacityRun run_capacity(const ExperimentConfig& cfg, int workers) {
  validate_config(cfg);
  if (is_multiuser_decoder(cfg.decoder)) throw ConfigError("decoder", "capacity runs are single-user");
  const CodeSpec code = CodeSpec::from_name(cfg.code, cfg.circulant_order);
  McOptions opt;
  opt.samples = cfg.max_frames;
  opt.seed = cfg.seed;
  opt.workers = workers > 0 ? workers : available_workers();
  CapacityRun out;
  out.code = capacity_code(code, cfg.receive_antennas, feedback_config(cfg), cfg.snr_grid_db, opt);
  out.c0 = capacity_c0(code.antennas(), cfg.receive_antennas, cfg.snr_grid_db, opt);
  return out;
}

double fit_diversity_slope(std::span<const double> snr_db, std::span<const double> ber, double window_db) {
  require(snr_db.size() == ber.size(), "fit_diversity_slope: size mismatch");
  require(!snr_db.empty(), "fit_diversity_slope: empty curve");
  const double top = *std::max_element(snr_db.begin(), snr_db.end());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < snr_db.size(); ++i) {
    if (snr_db[i] < top - window_db - 1e-9 || !(ber[i] > 0.0)) continue;
    const double x = snr_db[i] / 10.0;
    const double y = std::log10(ber[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 3) throw ContractViolation("fit_diversity_slope: fewer than three usable points in the window");
  const double dn = static_cast<double>(n);
  const double denom = dn * sxx - sx * sx;
  require(denom > 0.0, "fit_diversity_slope: degenerate SNR grid");
  return -(dn * sxy - sx * sy) / denom;
}

double fit_diversity_slope(const ExperimentResult& r, double window_db) {
  std::vector<double> x, y;
  for (const PointResult& p : r.points) {
    x.push_back(p.snr_db);
    y.push_back(p.ber());
  }
  return fit_diversity_slope(x, y, window_db);
}

std::optional<double> snr_at_ber(const ExperimentResult& r, double target) {
  for (std::size_t i = 0; i + 1 < r.points.size(); ++i) {
    const PointResult& a = r.points[i];
    const PointResult& b = r.points[i + 1];
    if (a.ber() >= target && b.ber() < target) {
      if (b.ber() <= 0.0) return b.snr_db;
      const double la = std::log10(a.ber());
      const double lb = std::log10(b.ber());
      const double t = (la - std::log10(target)) / (la - lb);
      return a.snr_db + t * (b.snr_db - a.snr_db);
    }
  }
  return std::nullopt;
}

void write_atomic(const std::filesystem::path& path, std::string_view contents) {
  const std::filesystem::path dir = path.has_parent_path() ? path.parent_path() : ".";
  const std::filesystem::path tmp = dir / ("." + path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string ber_csv(const ExperimentResult& r) {
  std::string s = "snr_db,ber,ser,bit_errors,frames,std_error\n";
  for (const PointResult& p : r.points) {
    s += format_double(p.snr_db) + "," + format_double(p.ber()) + "," + format_double(p.ser()) + "," +
         std::to_string(p.bit_errors) + "," + std::to_string(p.frames) + "," + format_double(p.std_error()) +
         "\n";
  }
  return s;
}

std::string capacity_csv(const CapacityRun& r) {
  std::string s = "snr_db,capacity,std_error,capacity_c0,c0_std_error,samples\n";
  for (std::size_t i = 0; i < r.code.size(); ++i) {
    s += format_double(r.code[i].snr_db) + "," + format_double(r.code[i].bits_per_channel_use) + "," +
         format_double(r.code[i].std_error) + "," + format_double(r.c0[i].bits_per_channel_use) + "," +
         format_double(r.c0[i].std_error) + "," + std::to_string(r.code[i].samples) + "\n";
  }
  return s;
}

std::string sidecar_json(const ExperimentConfig& cfg, std::string_view command) {
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
  const json j{{"command", std::string(command)},
               {"config", to_json(cfg)},
               {"seed", cfg.seed},
               {"config_hash", hash},
               {"git_describe", std::string(build_git_describe())}};
  return j.dump(2) + "\n";
}

std::filesystem::path sidecar_path(const std::filesystem::path& out) {
  std::filesystem::path p = out;
  p += ".json";
  return p;
}

std::string_view build_git_describe() noexcept { return CODEDIV_GIT_DESCRIBE; }

}  // namespace codediv
