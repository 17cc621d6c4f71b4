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

// Space-time block code catalog.
//
// Each code maps L symbols to a transmitted block and, through the
// receive-side canonicalization in CodeSpec::receive, to a linear model
// r = H_eff c. The free functions reproduce the literature matrices
// verbatim; CodeSpec wraps them with a fixed antenna/slot orientation.

#pragma once

#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "codediv/linalg.hpp"

namespace codediv {

enum class GoldenVariant { G1, G2 };

inline constexpr double kGoldenTau = std::numbers::phi;
inline constexpr double kGoldenMu = 1.0 - std::numbers::phi;

/// alpha^3 = tau, beta^3 = mu with beta the real (negative) cube root, so
/// alpha * beta = -1.
struct CirculantWeights {
  double alpha;
  double beta;

  static CirculantWeights golden();
};

/// Whether the induced channel acts on complex symbols or on the real
/// stacking (Re c1, Im c1, Re c2, ...). The latter is needed for codes that
/// mix a symbol and the conjugate of another in one slot.
enum class SymbolDomain { Complex, RealPairs };

struct InducedChannel {
  CMat matrix;
  SymbolDomain domain = SymbolDomain::Complex;
};

// ---- literature matrices --------------------------------------------------

/// Rows (x1, x2), (-x2*, x1*); rows are time slots.
CMat encode_alamouti(cplx x1, cplx x2);
/// Rate-3/4 orthogonal design for four antennas; rows are time slots.
CMat encode_ostbc34(cplx x1, cplx x2, cplx x3);
/// Jafarkhani quasi-orthogonal code; rows are time slots.
CMat encode_qostbc(std::span<const cplx> x);
/// Induced 4x4 channel for one receive antenna.
CMat induce_qostbc(std::span<const cplx> h);

/// Grammian of the QOSTBC induced channel is [[a,0,0,b],[0,a,-b,0],
/// [0,-b,a,0],[b,0,0,a]].
struct QostbcGrammianTerms {
  double a;
  double b;
};
QostbcGrammianTerms qostbc_grammian_terms(std::span<const cplx> h);

/// Golden code G1 or its tau/mu-swapped variant G2 (rows are antennas).
CMat encode_golden(GoldenVariant v, std::span<const cplx> s);
/// Induced channel for N = 1 or 2 receive antennas, rows ordered by
/// (slot, antenna).
CMat induce_golden(GoldenVariant v, const CMat& h);

/// Circulant codeword. Without weights, row k is the base row shifted
/// right k times. With weights the base row is (x1 alpha, x2 beta, x3) and
/// rows shift left, which is the symmetric 3x3 form whose induced channel
/// is circulant in h.
CMat encode_circulant(std::span<const cplx> x, std::optional<CirculantWeights> w = std::nullopt);
/// Circulant with base row h: row k is h shifted right k times.
CMat induce_circulant(std::span<const cplx> h);
/// Right-shift operator: (x1..xM) L = (xM, x1, ..., x_{M-1}).
CMat shift_matrix(std::size_t m);

/// Eigenvalues h f_j of the circulant with base row h, j = 0..M-1.
CVec circulant_eigenvalues(std::span<const cplx> base_row);

// ---- catalog --------------------------------------------------------------

enum class CodeId { Alamouti, Ostbc34, Qostbc, GoldenG1, GoldenG2, GoldenCd, Circulant3, CirculantM };

class CodeSpec {
 public:
  /// Names: alamouti, ostbc34, qostbc, golden-g1, golden-g2, golden-cd,
  /// circulant3, circulantM. `circulant_order` only applies to circulantM.
  static CodeSpec from_name(std::string_view name, std::size_t circulant_order = 4);
  static const std::vector<std::string>& names();
  /// The seven fixed codes (golden-cd switches between two of them).
  static std::vector<CodeSpec> fixed_catalog();

  CodeId id() const noexcept { return id_; }
  const std::string& name() const noexcept { return name_; }
  std::size_t antennas() const noexcept { return m_; }
  std::size_t slots() const noexcept { return t_; }
  std::size_t symbols() const noexcept { return l_; }
  double rate() const noexcept { return static_cast<double>(l_) / static_cast<double>(t_); }
  SymbolDomain domain() const noexcept;

  bool is_golden() const noexcept;
  bool is_circulant() const noexcept;
  GoldenVariant golden_variant() const noexcept { return variant_; }
  /// golden-cd with a variant selected; identity for every other code.
  CodeSpec with_golden_variant(GoldenVariant v) const;

  /// M x T block, rows are transmit antennas, columns are time slots.
  CMat encode(std::span<const cplx> c) const;
  /// Induced channel for an N x M channel matrix.
  InducedChannel induce(const CMat& h) const;
  /// Canonical received vector from an N x T block: column-major stacking,
  /// with conjugate-transmitted slots replaced by their negated conjugate
  /// (or real-stacked for RealPairs codes). receive(H X(c)) == induce(H) c.
  CVec receive(const CMat& y) const;

  /// Circulant codes, one receive antenna: base row of the induced
  /// circulant (before symbol weights).
  CVec circulant_base_row(std::span<const cplx> h) const;
  /// Per-symbol weights folded into the effective symbols (all ones for
  /// unweighted codes).
  std::vector<double> symbol_weights() const;

 private:
  CodeSpec(CodeId id, std::string name, std::size_t m, std::size_t t, std::size_t l)
      : id_(id), name_(std::move(name)), m_(m), t_(t), l_(l) {}

  CodeId id_;
  std::string name_;
  std::size_t m_, t_, l_;
  GoldenVariant variant_ = GoldenVariant::G1;
};

/// Real stacking helpers used by RealPairs codes.
CVec realify(std::span<const cplx> v);
CVec complexify(std::span<const cplx> real_pairs);

}  // namespace codediv
