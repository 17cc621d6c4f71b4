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

// Receiver-side feedback selection: which phase rotations (or which Golden
// variant) the transmitter should use for the current channel.

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "codediv/channel.hpp"
#include "codediv/codes.hpp"

namespace codediv {

struct FeedbackDecision {
  std::vector<PhaseSite> sites;
  std::optional<GoldenVariant> variant;
  /// Criterion at the selected indices: product of the nonzero Grammian
  /// eigenvalues, |lambda|, |prod h f_j| or the instantaneous SNR factor,
  /// depending on the algorithm.
  double objective = 0.0;
  std::size_t rank = 0;
  unsigned feedback_bits = 0;
  /// Closed-form QOSTBC selection could not use its formula and ran the
  /// exhaustive search instead.
  bool fallback = false;
};

struct SiteRef {
  std::size_t tx = 0;
  std::size_t rx = 0;
};

/// ceil(log2 K); 0 for K = 1.
unsigned feedback_bits_for(unsigned levels) noexcept;

/// Exhaustive search over K^|sites| rotations; picks the lexicographically
/// first maximizer of (rank, product of nonzero eigenvalues) of the induced
/// Grammian.
FeedbackDecision select_generic(const CodeSpec& code, const CMat& h, std::span<const SiteRef> sites,
                                unsigned levels);

/// QOSTBC, one receive antenna, rotation of h1. det = (a^2 - b^2)^2 with a
/// rotation invariant, so the search reduces to argmin_k |b_k| using the
/// closed form of b. Falls back to select_generic when h1 h4* = 0.
FeedbackDecision select_qostbc_closed_form(std::span<const cplx> h, unsigned levels);

/// b after rotating h1 by `theta`.
double qostbc_b_after_rotation(std::span<const cplx> h, double theta);
/// Phase alignment angle arg(h2 h3* / (h1 h4*)) in (-pi, pi].
double qostbc_alignment_phase(std::span<const cplx> h);
/// Continuous rotation of h1 minimizing |b|, in [0, 2 pi). Zero |b| is
/// reachable exactly when |Re(h2 h3*)| <= |h1 h4|.
double qostbc_optimal_phase(std::span<const cplx> h);
/// Grid index k in 1..K closest to `theta` on the circle (ties: lowest k).
unsigned nearest_phase_index(double theta, unsigned levels);

/// ||H^H G||_F / (||H||_F ||G||_F) for the stacked 4 x 2 user channels.
double interference_coefficient(const CMat& hs, const CMat& gs);

/// Gains of the two-user Alamouti uplink; h_ij / g_ij is transmit antenna i
/// of user 1 / user 2 to receive antenna j.
struct TwoUserGains {
  cplx h11, h21, h12, h22;
  cplx g11, g21, g12, g22;
};

struct TwoUserBlocks {
  CMat h1, h2, g1, g2;  // Alamouti blocks at receive antennas 1 and 2

  CMat stacked_h() const;  // (H1; H2)
  CMat stacked_g() const;  // (G1; G2)
};

/// Blocks with user 1 antenna 1 rotated by gamma1 and user 2 antenna 1 by
/// gamma2.
TwoUserBlocks two_user_blocks(const TwoUserGains& g, cplx gamma1 = 1.0, cplx gamma2 = 1.0);

/// Grid search over (k1, k2) minimizing the interference coefficient.
/// sites[0] holds user 1's rotation, sites[1] user 2's.
FeedbackDecision select_multiuser(const TwoUserGains& g, unsigned levels1, unsigned levels2);
TwoUserBlocks apply_multiuser(const TwoUserGains& g, const FeedbackDecision& d);

/// Golden variant choice: G1 iff |h1|^2 (+|h3|^2) >= |h2|^2 (+|h4|^2).
/// `h` holds (h1, h2) for one receive antenna or (h1, h2, h3, h4) for two,
/// where h3, h4 belong to the second receive antenna.
FeedbackDecision select_golden_variant(std::span<const cplx> h, unsigned receive_count);

enum class CirculantPhaseStep { HalfTurnOverK, FullTurnOverK };

/// Rotation of h1 maximizing |prod_j h f_j|; the default grid is
/// exp(i k pi / K).
FeedbackDecision select_circulant(std::span<const cplx> h, unsigned levels,
                                  CirculantPhaseStep step = CirculantPhaseStep::HalfTurnOverK);

/// Per-frame feedback used by the experiments. Generic selection rotates the
/// first `phase_sites` gains of receive antenna 1.
struct FeedbackConfig {
  enum class Kind { None, Generic, ClosedForm, Multiuser, Golden, Circulant } kind = Kind::None;
  unsigned levels = 4;
  unsigned levels2 = 4;
  std::size_t phase_sites = 1;
  CirculantPhaseStep step = CirculantPhaseStep::HalfTurnOverK;
};

struct FeedbackOutcome {
  CMat h;         // channel after the selected rotations
  CodeSpec code;  // the code in use (golden-cd resolves to a variant)
  FeedbackDecision decision;
};

/// Single-user feedback; Multiuser is handled by select_multiuser.
FeedbackOutcome apply_feedback(const CodeSpec& code, const CMat& h, const FeedbackConfig& fb);

}  // namespace codediv
