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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "codediv/analysis.hpp"
#include "codediv/channel.hpp"
#include "codediv/constellation.hpp"
#include "codediv/diversity.hpp"

namespace codediv {

struct ExperimentConfig {
  std::string code = "alamouti";
  std::string decoder = "ml";
  std::string feedback = "none";  // none, generic, closed-form, multiuser, golden, circulant
  unsigned k = 4;
  unsigned k1 = 4;
  unsigned k2 = 4;
  unsigned constellation_order = 4;
  std::vector<double> snr_grid_db{0.0, 5.0, 10.0, 15.0, 20.0};
  std::string convention = "per-model-eq";
  std::uint64_t min_errors = 200;
  std::uint64_t max_frames = 1000000;
  std::uint64_t seed = 1;
  double sir_gamma = 0.5;
  unsigned receive_antennas = 1;
  unsigned circulant_order = 4;
  unsigned phase_sites = 1;
  std::string circulant_phase_step = "pi/K";  // or "2pi/K"
};

/// Parses a JSON object whose keys are ExperimentConfig field names; missing
/// keys keep their defaults. Throws ConfigError naming the offending field.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const ExperimentConfig& cfg, int indent = 2);
/// Applies "key=value"; the value is read as JSON when it parses, else as a
/// string.
void apply_override(ExperimentConfig& cfg, std::string_view assignment);
/// Checks field ranges and the (code, decoder, feedback) combination.
void validate_config(const ExperimentConfig& cfg);
/// FNV-1a over the canonical (key-sorted) JSON form.
std::uint64_t config_hash(const ExperimentConfig& cfg);

struct PointResult {
  double snr_db = 0.0;
  std::uint64_t bit_errors = 0;
  std::uint64_t symbol_errors = 0;
  std::uint64_t bits = 0;
  std::uint64_t symbols = 0;
  std::uint64_t frames = 0;

  double ber() const noexcept;
  double ser() const noexcept;
  /// sqrt(ber (1 - ber) / bits)
  double std_error() const noexcept;
};

struct ExperimentResult {
  std::vector<PointResult> points;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
};

struct FrameCounts {
  std::uint64_t bit_errors = 0;
  std::uint64_t symbol_errors = 0;
  std::uint64_t bits = 0;
  std::uint64_t symbols = 0;
  std::uint64_t frames = 0;

  void merge(const FrameCounts& o) noexcept;
};

/// Frames per seeded block; block b of SNR point i draws from
/// block_rng(seed, i, b).
inline constexpr std::uint64_t kFramesPerBlock = 256;

/// One frame: channel draw, feedback, encode, transmit, decode, count.
class FrameSimulator {
 public:
  explicit FrameSimulator(const ExperimentConfig& cfg);

  FrameCounts run_frame(Rng& rng, double snr_db) const;
  FrameCounts run_block(std::size_t point, std::uint64_t block, std::uint64_t frames) const;

  const ExperimentConfig& config() const noexcept { return cfg_; }

 private:
  FrameCounts single_user(Rng& rng, double snr) const;
  FrameCounts multi_user(Rng& rng, double snr) const;

  ExperimentConfig cfg_;
  CodeSpec code_;
  Constellation q_;
  FeedbackConfig fb_;
  SnrConvention convention_;
  bool multiuser_;
};

/// OpenMP block driver; `workers` <= 0 means all available threads.
ExperimentResult run_ber(const ExperimentConfig& cfg, int workers = 0);
/// Plain sequential driver over the same blocks, kept as a reference for
/// the parallel one; results are bit-identical.
ExperimentResult run_ber_serial(const ExperimentConfig& cfg);

struct CapacityRun {
  std::vector<CapacityEstimate> code;
  std::vector<CapacityEstimate> c0;
};

/// Code capacity (with the configured feedback) and the unconstrained
/// capacity on the same channel draws; max_frames is the sample count.
CapacityRun run_capacity(const ExperimentConfig& cfg, int workers = 0);

/// Negated least-squares slope of log10(ber) against snr_db / 10 over the
/// points with ber > 0 in the top `window_db` of the grid. Throws
/// ContractViolation with fewer than three such points.
double fit_diversity_slope(const ExperimentResult& r, double window_db = 10.0);
double fit_diversity_slope(std::span<const double> snr_db, std::span<const double> ber,
                           double window_db = 10.0);

/// SNR at which the BER curve first falls below `target`, interpolating
/// log10(ber) linearly between grid points.
std::optional<double> snr_at_ber(const ExperimentResult& r, double target);

/// Writes via a temporary file in the same directory and a rename.
void write_atomic(const std::filesystem::path& path, std::string_view contents);
std::string ber_csv(const ExperimentResult& r);
std::string capacity_csv(const CapacityRun& r);
/// Config echo, seed, config hash and the build's git describe.
std::string sidecar_json(const ExperimentConfig& cfg, std::string_view command);
std::filesystem::path sidecar_path(const std::filesystem::path& out);

std::string_view build_git_describe() noexcept;

}  // namespace codediv
