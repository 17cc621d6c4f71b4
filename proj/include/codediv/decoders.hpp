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
#include <utility>
#include <vector>

#include "codediv/codes.hpp"
#include "codediv/constellation.hpp"
#include "codediv/diversity.hpp"

namespace codediv {

struct DecodeResult {
  CVec symbols;
  std::vector<unsigned> labels;
  double metric = 0.0;  // ||r - scale * Heff * c_hat||^2
  std::uint64_t complexity = 0;
};

inline constexpr std::uint64_t kMlCandidateLimit = std::uint64_t{1} << 20;

/// Number of complex symbols carried by an induced channel.
std::size_t symbol_count(const InducedChannel& ch);

/// Exhaustive ML over the product constellation, labels enumerated
/// lexicographically, first minimum kept. Throws ContractViolation when
/// |Q|^L exceeds kMlCandidateLimit.
DecodeResult ml_decode(const InducedChannel& ch, std::span<const cplx> r, const Constellation& q,
                       double scale);

/// Pseudo-inverse followed by per-symbol slicing.
DecodeResult zf_decode(const InducedChannel& ch, std::span<const cplx> r, const Constellation& q,
                       double scale);

struct Decorrelated {
  CVec r1, r2;
  CMat h_prime;  // H1 - G1 G2^{-1} H2
  CMat g_prime;  // G2 - H2 H1^{-1} G1
};

/// Applies W = (I, -G1 G2^{-1}; -H2 H1^{-1}, I). Throws ContractViolation
/// when H1 or G2 is singular.
Decorrelated mu_decorrelate(std::span<const cplx> r1, std::span<const cplx> r2, const TwoUserBlocks& b);

/// Decorrelation followed by independent per-user slicing.
std::pair<DecodeResult, DecodeResult> mu_zf_decode(std::span<const cplx> r1, std::span<const cplx> r2,
                                                   const TwoUserBlocks& b, const Constellation& q,
                                                   double scale);

/// Joint ML over both users' symbols on the stacked 4 x 4 system.
std::pair<DecodeResult, DecodeResult> mu_ml_decode(std::span<const cplx> r1, std::span<const cplx> r2,
                                                   const TwoUserBlocks& b, const Constellation& q,
                                                   double scale);

/// Linear decoder for C(k, j) = eta[(j - k) mod M] diag(weights): divides by
/// the Fourier eigenvalues eta . f_j, undoes the weights and slices. Throws
/// IllConditioned when some |eta . f_j| < 1e-9 ||eta||.
DecodeResult circulant_fourier_decode(std::span<const cplx> base_row, std::span<const cplx> r,
                                      const Constellation& q, std::span<const double> weights,
                                      double scale);

}  // namespace codediv
