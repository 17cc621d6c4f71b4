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

#include "codediv/constellation.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "codediv/errors.hpp"

namespace codediv {

namespace {

// Per-axis Gray map for 4-PAM: (sign, amplitude) -> level.
double pam4_level(unsigned sign_bit, unsigned amp_bit) {
  const double mag = amp_bit ? 3.0 : 1.0;
  return sign_bit ? -mag : mag;
}

}  // namespace

Constellation::Constellation(unsigned order) : order_(order) {
  if (order == 4) {
    bits_ = 2;
    const double s = 1.0 / std::sqrt(2.0);
    for (unsigned label = 0; label < 4; ++label) {
      const double re = (label & 2u) ? -s : s;
      const double im = (label & 1u) ? -s : s;
      points_.emplace_back(re, im);
    }
  } else if (order == 16) {
    bits_ = 4;
    const double s = 1.0 / std::sqrt(10.0);
    for (unsigned label = 0; label < 16; ++label) {
      const double re = pam4_level((label >> 3) & 1u, (label >> 2) & 1u);
      const double im = pam4_level((label >> 1) & 1u, label & 1u);
      points_.emplace_back(s * re, s * im);
    }
  } else {
    throw ContractViolation("Constellation: order must be 4 or 16");
  }
}

unsigned Constellation::nearest(cplx z) const noexcept {
  unsigned best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (unsigned label = 0; label < order_; ++label) {
    const double d = std::norm(z - points_[label]);
    if (d < best_d) {
      best_d = d;
      best = label;
    }
  }
  return best;
}

double Constellation::min_distance() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points_.size(); ++i)
    for (std::size_t j = i + 1; j < points_.size(); ++j) m = std::min(m, std::abs(points_[i] - points_[j]));
  return m;
}

std::vector<unsigned> bits_to_labels(std::span<const std::uint8_t> bits, const Constellation& c) {
  const unsigned k = c.bits_per_symbol();
  require(bits.size() % k == 0, "modulate: bit count not divisible by bits per symbol");
  std::vector<unsigned> labels(bits.size() / k);
  for (std::size_t s = 0; s < labels.size(); ++s) {
    unsigned label = 0;
    for (unsigned b = 0; b < k; ++b) label = (label << 1) | (bits[s * k + b] & 1u);
    labels[s] = label;
  }
  return labels;
}

Bits labels_to_bits(std::span<const unsigned> labels, const Constellation& c) {
  const unsigned k = c.bits_per_symbol();
  Bits bits(labels.size() * k);
  for (std::size_t s = 0; s < labels.size(); ++s)
    for (unsigned b = 0; b < k; ++b) bits[s * k + b] = static_cast<std::uint8_t>((labels[s] >> (k - 1 - b)) & 1u);
  return bits;
}

CVec modulate(std::span<const std::uint8_t> bits, const Constellation& c) {
  const auto labels = bits_to_labels(bits, c);
  CVec out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = c.point(labels[i]);
  return out;
}

Bits demodulate_hard(std::span<const cplx> symbols, const Constellation& c) {
  std::vector<unsigned> labels(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) labels[i] = c.nearest(symbols[i]);
  return labels_to_bits(labels, c);
}

unsigned bit_distance(unsigned a, unsigned b) noexcept { return static_cast<unsigned>(std::popcount(a ^ b)); }

}  // namespace codediv
