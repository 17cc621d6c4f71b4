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

#include "codediv/codes.hpp"

#include <cmath>

#include "codediv/errors.hpp"

namespace codediv {

namespace {

constexpr cplx kI{0.0, 1.0};

cplx cj(cplx z) { return std::conj(z); }

// Induced channel of a real-linear code via its action on the real basis.
CMat real_linear_induce(const CodeSpec& code, const CMat& h) {
  const std::size_t l = code.symbols();
  const std::size_t rows = 2 * h.rows() * code.slots();
  CMat a(rows, 2 * l);
  CVec c(l);
  for (std::size_t j = 0; j < l; ++j) {
    for (int part = 0; part < 2; ++part) {
      std::fill(c.begin(), c.end(), cplx{});
      c[j] = part == 0 ? cplx{1.0} : kI;
      const CVec y = code.receive(h * code.encode(c));
      for (std::size_t r = 0; r < rows; ++r) a(r, 2 * j + part) = y[r].real();
    }
  }
  return a;
}

}  // namespace

CirculantWeights CirculantWeights::golden() { return {std::cbrt(kGoldenTau), std::cbrt(kGoldenMu)}; }

CMat encode_alamouti(cplx x1, cplx x2) { return CMat{{x1, x2}, {-cj(x2), cj(x1)}}; }

CMat encode_ostbc34(cplx x1, cplx x2, cplx x3) {
  return CMat{{x1, x2, x3, 0.0},
              {-cj(x2), cj(x1), 0.0, x3},
              {-cj(x3), 0.0, cj(x1), -x2},
              {0.0, -cj(x3), cj(x2), x1}};
}

CMat encode_qostbc(std::span<const cplx> x) {
  require(x.size() == 4, "encode_qostbc: needs four symbols");
  return CMat{{x[0], x[1], x[2], x[3]},
              {-cj(x[1]), cj(x[0]), -cj(x[3]), cj(x[2])},
              {-cj(x[2]), -cj(x[3]), cj(x[0]), cj(x[1])},
              {x[3], -x[2], -x[1], x[0]}};
}

CMat induce_qostbc(std::span<const cplx> h) {
  require(h.size() == 4, "induce_qostbc: needs four channel gains");
  return CMat{{h[0], h[1], h[2], h[3]},
              {-cj(h[1]), cj(h[0]), -cj(h[3]), cj(h[2])},
              {-cj(h[2]), -cj(h[3]), cj(h[0]), cj(h[1])},
              {h[3], -h[2], -h[1], h[0]}};
}

QostbcGrammianTerms qostbc_grammian_terms(std::span<const cplx> h) {
  require(h.size() == 4, "qostbc_grammian_terms: needs four channel gains");
  double a = 0.0;
  for (const cplx& z : h) a += std::norm(z);
  const double b = 2.0 * (h[0] * cj(h[3]) - h[1] * cj(h[2])).real();
  return {a, b};
}

CMat encode_golden(GoldenVariant v, std::span<const cplx> s) {
  require(s.size() == 4, "encode_golden: needs four symbols");
  const double p = v == GoldenVariant::G1 ? kGoldenTau : kGoldenMu;
  const double q = v == GoldenVariant::G1 ? kGoldenMu : kGoldenTau;
  return CMat{{s[0] + p * s[1], s[2] + p * s[3]}, {kI * (s[2] + q * s[3]), s[0] + q * s[1]}};
}

CMat induce_golden(GoldenVariant v, const CMat& h) {
  require(h.cols() == 2, "induce_golden: channel must have two transmit antennas");
  require(h.rows() == 1 || h.rows() == 2, "induce_golden: one or two receive antennas supported");
  const double p = v == GoldenVariant::G1 ? kGoldenTau : kGoldenMu;
  const double q = v == GoldenVariant::G1 ? kGoldenMu : kGoldenTau;
  const std::size_t n = h.rows();
  CMat a(2 * n, 4);
  for (std::size_t r = 0; r < n; ++r) {
    const cplx h1 = h(r, 0), h2 = h(r, 1);
    // slot 0: h1 (s1 + p s2) + h2 i (s3 + q s4)
    a(r, 0) = h1;
    a(r, 1) = p * h1;
    a(r, 2) = kI * h2;
    a(r, 3) = kI * q * h2;
    // slot 1: h1 (s3 + p s4) + h2 (s1 + q s2)
    a(n + r, 0) = h2;
    a(n + r, 1) = q * h2;
    a(n + r, 2) = h1;
    a(n + r, 3) = p * h1;
  }
  return a;
}

CMat encode_circulant(std::span<const cplx> x, std::optional<CirculantWeights> w) {
  const std::size_t m = x.size();
  require(m >= 1, "encode_circulant: needs at least one symbol");
  CMat out(m, m);
  if (!w) {
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t t = 0; t < m; ++t) out(k, t) = x[(t + m - k) % m];
    return out;
  }
  require(m == 3, "encode_circulant: weighted code is 3x3");
  const cplx base[3] = {x[0] * w->alpha, x[1] * w->beta, x[2]};
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t t = 0; t < 3; ++t) out(k, t) = base[(k + t) % 3];
  return out;
}

CMat induce_circulant(std::span<const cplx> h) {
  const std::size_t m = h.size();
  require(m >= 1, "induce_circulant: needs at least one gain");
  CMat out(m, m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t j = 0; j < m; ++j) out(k, j) = h[(j + m - k) % m];
  return out;
}

CMat shift_matrix(std::size_t m) {
  CMat l(m, m);
  for (std::size_t i = 0; i < m; ++i) l(i, (i + 1) % m) = 1.0;
  return l;
}

CVec circulant_eigenvalues(std::span<const cplx> base_row) {
  const CMat f = fourier_basis(base_row.size());
  CVec lambda(base_row.size());
  for (std::size_t j = 0; j < base_row.size(); ++j) {
    cplx s = 0.0;
    for (std::size_t k = 0; k < base_row.size(); ++k) s += base_row[k] * f(k, j);
    lambda[j] = s;
  }
  return lambda;
}

CVec realify(std::span<const cplx> v) {
  CVec out(2 * v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[2 * i] = v[i].real();
    out[2 * i + 1] = v[i].imag();
  }
  return out;
}

CVec complexify(std::span<const cplx> real_pairs) {
  require(real_pairs.size() % 2 == 0, "complexify: odd length");
  CVec out(real_pairs.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {real_pairs[2 * i].real(), real_pairs[2 * i + 1].real()};
  return out;
}

// ---- CodeSpec -------------------------------------------------------------

const std::vector<std::string>& CodeSpec::names() {
  static const std::vector<std::string> n = {"alamouti",  "ostbc34",   "qostbc",     "golden-g1",
                                             "golden-g2", "golden-cd", "circulant3", "circulantM"};
  return n;
}

CodeSpec CodeSpec::from_name(std::string_view name, std::size_t circulant_order) {
  if (name == "alamouti") return {CodeId::Alamouti, "alamouti", 2, 2, 2};
  if (name == "ostbc34") return {CodeId::Ostbc34, "ostbc34", 4, 4, 3};
  if (name == "qostbc") return {CodeId::Qostbc, "qostbc", 4, 4, 4};
  if (name == "golden-g1") return {CodeId::GoldenG1, "golden-g1", 2, 2, 4};
  if (name == "golden-g2") {
    CodeSpec c{CodeId::GoldenG2, "golden-g2", 2, 2, 4};
    c.variant_ = GoldenVariant::G2;
    return c;
  }
  if (name == "golden-cd") return {CodeId::GoldenCd, "golden-cd", 2, 2, 4};
  if (name == "circulant3") return {CodeId::Circulant3, "circulant3", 3, 3, 3};
  if (name == "circulantM") {
    require(circulant_order >= 2, "circulantM: order must be at least 2");
    return {CodeId::CirculantM, "circulantM", circulant_order, circulant_order, circulant_order};
  }
  throw ContractViolation("unknown code name: " + std::string(name));
}

std::vector<CodeSpec> CodeSpec::fixed_catalog() {
  std::vector<CodeSpec> out;
  for (const auto& n : names())
    if (n != "golden-cd") out.push_back(from_name(n));
  return out;
}

SymbolDomain CodeSpec::domain() const noexcept {
  return id_ == CodeId::Ostbc34 ? SymbolDomain::RealPairs : SymbolDomain::Complex;
}

bool CodeSpec::is_golden() const noexcept {
  return id_ == CodeId::GoldenG1 || id_ == CodeId::GoldenG2 || id_ == CodeId::GoldenCd;
}

bool CodeSpec::is_circulant() const noexcept { return id_ == CodeId::Circulant3 || id_ == CodeId::CirculantM; }

CodeSpec CodeSpec::with_golden_variant(GoldenVariant v) const {
  CodeSpec c = *this;
  if (id_ == CodeId::GoldenCd) c.variant_ = v;
  return c;
}

CMat CodeSpec::encode(std::span<const cplx> c) const {
  require(c.size() == l_, "CodeSpec::encode: wrong symbol count");
  switch (id_) {
    case CodeId::Alamouti:
      return encode_alamouti(c[0], c[1]).transpose();
    case CodeId::Ostbc34:
      return encode_ostbc34(c[0], c[1], c[2]).transpose();
    case CodeId::Qostbc:
      return encode_qostbc(c).transpose();
    case CodeId::GoldenG1:
    case CodeId::GoldenG2:
    case CodeId::GoldenCd:
      return encode_golden(variant_, c);
    case CodeId::Circulant3:
      return encode_circulant(c, CirculantWeights::golden());
    case CodeId::CirculantM:
      return encode_circulant(c);
  }
  throw ContractViolation("CodeSpec::encode: unreachable");
}

CVec CodeSpec::receive(const CMat& y) const {
  require(y.cols() == t_, "CodeSpec::receive: block length must equal the code's slot count");
  CVec r = y.vec();
  const std::size_t n = y.rows();
  auto flip_slot = [&](std::size_t t) {
    for (std::size_t i = 0; i < n; ++i) r[t * n + i] = -std::conj(r[t * n + i]);
  };
  switch (id_) {
    case CodeId::Alamouti:
      flip_slot(1);
      break;
    case CodeId::Qostbc:
      flip_slot(1);
      flip_slot(2);
      break;
    case CodeId::Ostbc34:
      return realify(r);
    default:
      break;
  }
  return r;
}

InducedChannel CodeSpec::induce(const CMat& h) const {
  require(h.cols() == m_, "CodeSpec::induce: channel column count must equal the antenna count");
  const std::size_t n = h.rows();
  switch (id_) {
    case CodeId::Alamouti: {
      CMat a(2 * n, 2);
      for (std::size_t r = 0; r < n; ++r) {
        a(r, 0) = h(r, 0);
        a(r, 1) = h(r, 1);
        a(n + r, 0) = -cj(h(r, 1));
        a(n + r, 1) = cj(h(r, 0));
      }
      return {a, SymbolDomain::Complex};
    }
    case CodeId::Qostbc: {
      CMat a(4 * n, 4);
      for (std::size_t r = 0; r < n; ++r) {
        const cplx g[4] = {h(r, 0), h(r, 1), h(r, 2), h(r, 3)};
        const CMat block = induce_qostbc(g);
        for (std::size_t t = 0; t < 4; ++t)
          for (std::size_t j = 0; j < 4; ++j) a(t * n + r, j) = block(t, j);
      }
      return {a, SymbolDomain::Complex};
    }
    case CodeId::Ostbc34:
      return {real_linear_induce(*this, h), SymbolDomain::RealPairs};
    case CodeId::GoldenG1:
    case CodeId::GoldenG2:
    case CodeId::GoldenCd:
      return {induce_golden(variant_, h), SymbolDomain::Complex};
    case CodeId::Circulant3:
    case CodeId::CirculantM: {
      const std::vector<double> w = symbol_weights();
      CMat a(m_ * n, m_);
      for (std::size_t r = 0; r < n; ++r) {
        CVec row(m_);
        for (std::size_t i = 0; i < m_; ++i) row[i] = h(r, i);
        const CVec base = circulant_base_row(row);
        const CMat c = induce_circulant(base);
        for (std::size_t t = 0; t < m_; ++t)
          for (std::size_t j = 0; j < m_; ++j) a(t * n + r, j) = c(t, j) * w[j];
      }
      return {a, SymbolDomain::Complex};
    }
  }
  throw ContractViolation("CodeSpec::induce: unreachable");
}

CVec CodeSpec::circulant_base_row(std::span<const cplx> h) const {
  require(is_circulant(), "circulant_base_row: not a circulant code");
  require(h.size() == m_, "circulant_base_row: wrong gain count");
  if (id_ == CodeId::Circulant3) return CVec(h.begin(), h.end());
  // Right-shift codewords induce the circulant whose first column is h.
  CVec eta(m_);
  for (std::size_t j = 0; j < m_; ++j) eta[j] = h[(m_ - j) % m_];
  return eta;
}

std::vector<double> CodeSpec::symbol_weights() const {
  if (id_ == CodeId::Circulant3) {
    const auto w = CirculantWeights::golden();
    return {w.alpha, w.beta, 1.0};
  }
  return std::vector<double>(l_, 1.0);
}

}  // namespace codediv
