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

#include "codediv/channel.hpp"

#include <cmath>
#include <numbers>

#include "codediv/errors.hpp"

namespace codediv {

double PhaseSite::angle() const noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(levels);
}

SnrConvention parse_convention(std::string_view name) {
  if (name == "per-model-eq") return SnrConvention::PerModelEq;
  if (name == "qostbc-frobenius") return SnrConvention::QostbcFrobenius;
  if (name == "golden-eq") return SnrConvention::GoldenEq;
  throw ContractViolation("unknown SNR convention: " + std::string(name));
}

std::string_view convention_name(SnrConvention c) noexcept {
  switch (c) {
    case SnrConvention::PerModelEq:
      return "per-model-eq";
    case SnrConvention::QostbcFrobenius:
      return "qostbc-frobenius";
    case SnrConvention::GoldenEq:
      return "golden-eq";
  }
  return "?";
}

cplx complex_gaussian(Rng& rng, double sigma2) { return ComplexGaussian{}(rng, sigma2); }

ChannelRealization sample_channel(std::size_t m, std::size_t n, double sigma2, Rng& rng) {
  require(sigma2 > 0.0, "sample_channel: sigma2 must be positive");
  ChannelRealization ch{CMat(n, m), sigma2, 0};
  ComplexGaussian g;
  for (auto& z : ch.h.data()) z = g(rng, sigma2);
  return ch;
}

CMat apply_phase(const CMat& h, std::span<const PhaseSite> sites) {
  CMat out = h;
  for (const PhaseSite& s : sites) {
    require(s.tx < h.cols() && s.rx < h.rows(), "apply_phase: site outside channel shape");
    require(s.levels >= 1 && s.k >= 1 && s.k <= s.levels, "apply_phase: k must lie in 1..K");
    out(s.rx, s.tx) *= std::polar(1.0, s.angle());
  }
  return out;
}

CVec add_awgn(std::span<const cplx> signal, double n0, Rng& rng) {
  require(n0 >= 0.0, "add_awgn: noise power must be nonnegative");
  CVec out(signal.begin(), signal.end());
  if (n0 == 0.0) return out;
  ComplexGaussian g;
  for (auto& z : out) z += g(rng, n0);
  return out;
}

SnrScaling scale_for_snr(const SnrSpec& spec, const ChannelRealization& ch, const CodeSpec& code) {
  require(spec.es_over_n0 > 0.0, "scale_for_snr: SNR must be positive");
  const double m = static_cast<double>(code.antennas());
  double es_n0 = spec.es_over_n0;
  switch (spec.convention) {
    case SnrConvention::PerModelEq:
      break;
    case SnrConvention::QostbcFrobenius: {
      require(code.antennas() == 4 && ch.h.rows() == 1,
              "scale_for_snr: qostbc-frobenius applies to four-antenna codes with one receive antenna");
      const double f2 = std::pow(frobenius_norm(ch.h), 2);
      require(f2 > 0.0, "scale_for_snr: zero channel");
      es_n0 = spec.es_over_n0 * 4.0 / f2;
      break;
    }
    case SnrConvention::GoldenEq:
      require(code.is_golden(), "scale_for_snr: golden-eq applies to Golden codes only");
      es_n0 = spec.es_over_n0 /
              (ch.sigma2 * (2.0 + kGoldenTau * kGoldenTau + kGoldenMu * kGoldenMu));
      break;
  }
  return {std::sqrt(es_n0 / m), 1.0};
}

}  // namespace codediv
