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
#include <span>
#include <vector>

#include "codediv/codes.hpp"
#include "codediv/diversity.hpp"

namespace codediv {

struct CapacityEstimate {
  double snr_db = 0.0;
  double bits_per_channel_use = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

struct McOptions {
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  int workers = 1;
  double sigma2 = 1.0;
};

/// Unconstrained ergodic capacity E log2 det(I_N + (snr/M) H H^H).
std::vector<CapacityEstimate> capacity_c0(std::size_t m, std::size_t n, std::span<const double> snr_db,
                                          const McOptions& opt);

/// Code-constrained capacity (1/T) E log2 det(I + (snr/M) Heff Heff^H), with
/// the real-stacked form halved. Uses the same channel draws as capacity_c0
/// for equal (m, n, options).
std::vector<CapacityEstimate> capacity_code(const CodeSpec& code, std::size_t n, const FeedbackConfig& fb,
                                            std::span<const double> snr_db, const McOptions& opt);

/// Single-channel capacity of a code's induced channel at linear SNR.
double code_capacity(const CodeSpec& code, const InducedChannel& ch, double snr);
/// High-SNR form (1/T) log2(prod omega_i (snr/M)^d) over the nonzero
/// Grammian eigenvalues.
double code_capacity_high_snr(const CodeSpec& code, const InducedChannel& ch, double snr);

struct PepBound {
  std::size_t diversity_order = 0;
  double coding_gain = 0.0;  // product of the nonzero eigenvalues
  double bound_value = 0.0;  // 1 / det(I + f Heff^H Heff)
  double asymptotic = 0.0;   // (prod omega)^{-1} f^{-d}
};

PepBound pep_bound(const CMat& heff, double factor);

/// Golden selection gain 10 log10((e_max (1 + tau^2) + e_min (1 + mu^2)) /
/// (2 + tau^2 + mu^2)) for second moments in units of sigma^2. The defaults
/// are the moments of the larger and smaller of two unit exponentials.
double golden_gain_analytic(double e_max = 1.5, double e_min = 0.5);

struct GoldenMoments {
  double e_max = 0.0;
  double e_min = 0.0;
};

/// E[max(|h1|^2, |h2|^2)] and E[min(...)] for h_i ~ CN(0, sigma2).
GoldenMoments golden_moments_mc(const McOptions& opt);

/// Monte Carlo gain mean(S_selected) / mean(S_G1) in dB for one or two
/// receive antennas; with `selection` false the result is exactly 0 dB.
double golden_gain_mc(unsigned receive_count, const McOptions& opt, bool selection = true);

}  // namespace codediv
