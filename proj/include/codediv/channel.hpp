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

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "codediv/codes.hpp"
#include "codediv/linalg.hpp"

namespace codediv {

using Rng = std::mt19937_64;

/// Quasi-static channel draw: constant over one frame.
struct ChannelRealization {
  CMat h;  // N x M, h(j, i) is transmit i -> receive j
  double sigma2 = 1.0;
  std::uint64_t frame_index = 0;
};

/// Transmit gain h_ij -> h_ij * exp(2 pi i k / K), k in 1..K.
struct PhaseSite {
  std::size_t tx = 0;
  std::size_t rx = 0;
  unsigned k = 1;
  unsigned levels = 1;

  double angle() const noexcept;
};

enum class SnrConvention { PerModelEq, QostbcFrobenius, GoldenEq };

struct SnrSpec {
  double es_over_n0 = 1.0;  // linear
  SnrConvention convention = SnrConvention::PerModelEq;
};

struct SnrScaling {
  double es_scale;  // sqrt(Es / (M N0)) multiplying the codeword
  double n0;        // variance of the normalized receiver noise
};

SnrConvention parse_convention(std::string_view name);
std::string_view convention_name(SnrConvention c) noexcept;

/// One CN(0, sigma2) draw.
cplx complex_gaussian(Rng& rng, double sigma2);

/// Stateful CN(0, sigma2) sampler; keeps the distribution's cached draw
/// between calls, so prefer it inside loops.
class ComplexGaussian {
 public:
  cplx operator()(Rng& rng, double sigma2) {
    const double s = std::sqrt(sigma2 / 2.0);
    const double re = unit_(rng);
    const double im = unit_(rng);
    return {s * re, s * im};
  }

 private:
  std::normal_distribution<double> unit_{0.0, 1.0};
};

ChannelRealization sample_channel(std::size_t m, std::size_t n, double sigma2, Rng& rng);

CMat apply_phase(const CMat& h, std::span<const PhaseSite> sites);

/// Adds i.i.d. CN(0, n0) noise; n0 == 0 leaves the signal untouched.
CVec add_awgn(std::span<const cplx> signal, double n0, Rng& rng);

/// Transmit scaling and noise power for the requested SNR. The received
/// block is es_scale * H X + noise with noise ~ CN(0, n0), n0 = 1.
///  - PerModelEq:       SNR = Es/N0
///  - QostbcFrobenius:  SNR = Es/N0 * ||H||_F^2 / 4   (4 x 1 codes)
///  - GoldenEq:         SNR = Es sigma2 (2 + tau^2 + mu^2) / N0  (Golden codes)
SnrScaling scale_for_snr(const SnrSpec& spec, const ChannelRealization& ch, const CodeSpec& code);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

}  // namespace codediv
