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

#include "codediv/linalg.hpp"

namespace codediv {

/// Square Gray-labelled QAM with unit average energy.
///
/// Label bits are read MSB first. For 4-QAM the label is (b1 b0): b1 picks
/// the sign of the real part, b0 the sign of the imaginary part, 0 meaning
/// positive. 16-QAM applies the same rule per axis with a second bit for
/// the amplitude, giving labels (s_re m_re s_im m_im).
class Constellation {
 public:
  /// order must be 4 or 16.
  explicit Constellation(unsigned order);

  unsigned order() const noexcept { return order_; }
  unsigned bits_per_symbol() const noexcept { return bits_; }
  std::span<const cplx> points() const noexcept { return points_; }
  const cplx& point(unsigned label) const { return points_.at(label); }

  /// Nearest point, ties resolved toward the lowest label.
  unsigned nearest(cplx z) const noexcept;

  /// Smallest distance between two distinct points.
  double min_distance() const;

 private:
  unsigned order_;
  unsigned bits_;
  std::vector<cplx> points_;
};

using Bits = std::vector<std::uint8_t>;

CVec modulate(std::span<const std::uint8_t> bits, const Constellation& c);
std::vector<unsigned> bits_to_labels(std::span<const std::uint8_t> bits, const Constellation& c);
Bits labels_to_bits(std::span<const unsigned> labels, const Constellation& c);
Bits demodulate_hard(std::span<const cplx> symbols, const Constellation& c);

/// Number of differing bits between two labels.
unsigned bit_distance(unsigned a, unsigned b) noexcept;

}  // namespace codediv
