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

#include "codediv/decoders.hpp"

#include <algorithm>

#include "codediv/errors.hpp"

namespace codediv {
namespace {

double residual_norm2(const CMat& a, std::span<const cplx> r, std::span<const cplx> c, double scale) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * c[j];
    acc += std::norm(r[i] - scale * s);
  }
  return acc;
}

CVec domain_vector(const InducedChannel& ch, const CVec& symbols) {
  return ch.domain == SymbolDomain::RealPairs ? realify(symbols) : symbols;
}

class MlSearch {
 public:
  MlSearch(const InducedChannel& ch, std::span<const cplx> r, const Constellation& q, double scale)
      : l_(symbol_count(ch)), nq_(q.order()), rows_(ch.matrix.rows()), contrib_(l_ * nq_ * rows_),
        stack_((l_ + 1) * rows_), labels_(l_), best_labels_(l_) {
    const CMat& a = ch.matrix;
    for (std::size_t j = 0; j < l_; ++j) {
      for (unsigned s = 0; s < nq_; ++s) {
        const cplx x = q.point(s);
        cplx* out = &contrib_[(j * nq_ + s) * rows_];
        for (std::size_t i = 0; i < rows_; ++i) {
          out[i] = ch.domain == SymbolDomain::RealPairs
                       ? scale * (x.real() * a(i, 2 * j) + x.imag() * a(i, 2 * j + 1))
                       : scale * x * a(i, j);
        }
      }
    }
    std::copy(r.begin(), r.end(), stack_.begin());
  }

  void run() { descend(0); }

  const std::vector<unsigned>& best_labels() const { return best_labels_; }
  double best_metric() const { return best_; }

 private:
  void descend(std::size_t depth) {
    const cplx* res = &stack_[depth * rows_];
    if (depth + 1 == l_) {
      for (unsigned s = 0; s < nq_; ++s) {
        const cplx* c = &contrib_[(depth * nq_ + s) * rows_];
        double m = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) m += std::norm(res[i] - c[i]);
        if (!found_ || m < best_) {
          found_ = true;
          best_ = m;
          labels_[depth] = s;
          best_labels_ = labels_;
        }
      }
      return;
    }
    cplx* next = &stack_[(depth + 1) * rows_];
    for (unsigned s = 0; s < nq_; ++s) {
      const cplx* c = &contrib_[(depth * nq_ + s) * rows_];
      for (std::size_t i = 0; i < rows_; ++i) next[i] = res[i] - c[i];
      labels_[depth] = s;
      descend(depth + 1);
    }
  }

  std::size_t l_;
  unsigned nq_;
  std::size_t rows_;
  CVec contrib_;
  CVec stack_;
  std::vector<unsigned> labels_;
  std::vector<unsigned> best_labels_;
  double best_ = 0.0;
  bool found_ = false;
};

}  // namespace

std::size_t symbol_count(const InducedChannel& ch) {
  if (ch.domain == SymbolDomain::RealPairs) {
    require(ch.matrix.cols() % 2 == 0, "real-pair channel needs an even column count");
    return ch.matrix.cols() / 2;
  }
  return ch.matrix.cols();
}

DecodeResult ml_decode(const InducedChannel& ch, std::span<const cplx> r, const Constellation& q,
                       double scale) {
  require(r.size() == ch.matrix.rows(), "ml_decode: received vector size mismatch");
  const std::size_t l = symbol_count(ch);
  require(l >= 1, "ml_decode: no symbols");
  std::uint64_t candidates = 1;
  for (std::size_t j = 0; j < l; ++j) {
    candidates *= q.order();
    if (candidates > kMlCandidateLimit) {
      throw ContractViolation("ml_decode: candidate count exceeds 2^20, use zf");
    }
  }

  MlSearch search(ch, r, q, scale);
  search.run();
  DecodeResult out;
  out.labels = search.best_labels();
  out.symbols.resize(l);
  for (std::size_t j = 0; j < l; ++j) out.symbols[j] = q.point(out.labels[j]);
  out.metric = search.best_metric();
  out.complexity = candidates;
  return out;
}

DecodeResult zf_decode(const InducedChannel& ch, std::span<const cplx> r, const Constellation& q,
                       double scale) {
  require(r.size() == ch.matrix.rows(), "zf_decode: received vector size mismatch");
  require(scale > 0.0, "zf_decode: scale must be positive");
  const std::size_t l = symbol_count(ch);
  const CMat p = pseudo_inverse(ch.matrix);
  const CVec z = p * r;

  DecodeResult out;
  out.labels.resize(l);
  out.symbols.resize(l);
  for (std::size_t j = 0; j < l; ++j) {
    const cplx est = ch.domain == SymbolDomain::RealPairs ? cplx{z[2 * j].real(), z[2 * j + 1].real()} / scale
                                                          : z[j] / scale;
    out.labels[j] = q.nearest(est);
    out.symbols[j] = q.point(out.labels[j]);
  }
  out.metric = residual_norm2(ch.matrix, r, domain_vector(ch, out.symbols), scale);
  out.complexity = static_cast<std::uint64_t>(l) * q.order();
  return out;
}

Decorrelated mu_decorrelate(std::span<const cplx> r1, std::span<const cplx> r2, const TwoUserBlocks& b) {
  require(r1.size() == 2 && r2.size() == 2, "mu_decorrelate: received vectors must have length 2");
  const CMat g2_inv = inverse(b.g2);
  const CMat h1_inv = inverse(b.h1);
  const CMat w12 = b.g1 * g2_inv;  // applied with a minus sign
  const CMat w21 = b.h2 * h1_inv;

  Decorrelated out;
  out.r1 = CVec(r1.begin(), r1.end());
  out.r2 = CVec(r2.begin(), r2.end());
  const CVec t1 = w12 * r2;
  const CVec t2 = w21 * r1;
  for (std::size_t i = 0; i < 2; ++i) {
    out.r1[i] -= t1[i];
    out.r2[i] -= t2[i];
  }
  out.h_prime = b.h1 - w12 * b.h2;
  out.g_prime = b.g2 - w21 * b.g1;
  return out;
}

std::pair<DecodeResult, DecodeResult> mu_zf_decode(std::span<const cplx> r1, std::span<const cplx> r2,
                                                   const TwoUserBlocks& b, const Constellation& q,
                                                   double scale) {
  const Decorrelated d = mu_decorrelate(r1, r2, b);
  return {zf_decode({d.h_prime}, d.r1, q, scale), zf_decode({d.g_prime}, d.r2, q, scale)};
}

std::pair<DecodeResult, DecodeResult> mu_ml_decode(std::span<const cplx> r1, std::span<const cplx> r2,
                                                   const TwoUserBlocks& b, const Constellation& q,
                                                   double scale) {
  require(r1.size() == 2 && r2.size() == 2, "mu_ml_decode: received vectors must have length 2");
  CMat joint(4, 4);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      joint(i, j) = b.h1(i, j);
      joint(i, j + 2) = b.g1(i, j);
      joint(i + 2, j) = b.h2(i, j);
      joint(i + 2, j + 2) = b.g2(i, j);
    }
  }
  const CVec r{r1[0], r1[1], r2[0], r2[1]};
  const DecodeResult all = ml_decode({joint}, r, q, scale);
  DecodeResult u1, u2;
  u1.symbols = {all.symbols[0], all.symbols[1]};
  u1.labels = {all.labels[0], all.labels[1]};
  u2.symbols = {all.symbols[2], all.symbols[3]};
  u2.labels = {all.labels[2], all.labels[3]};
  u1.metric = u2.metric = all.metric;
  u1.complexity = u2.complexity = all.complexity;
  return {u1, u2};
}

DecodeResult circulant_fourier_decode(std::span<const cplx> base_row, std::span<const cplx> r,
                                      const Constellation& q, std::span<const double> weights,
                                      double scale) {
  const std::size_t m = base_row.size();
  require(m >= 1 && r.size() == m && weights.size() == m, "circulant_fourier_decode: size mismatch");
  require(scale > 0.0, "circulant_fourier_decode: scale must be positive");
  const CVec lambda = circulant_eigenvalues(base_row);
  const double tol = 1e-9 * frobenius_norm(base_row);
  for (const cplx& l : lambda) {
    if (std::abs(l) < tol || std::abs(l) == 0.0) {
      throw IllConditioned("circulant_fourier_decode: near-zero Fourier eigenvalue");
    }
  }

  // C = F diag(lambda) F^H / M, so C^{-1} r = F diag(1/lambda) F^H r / M.
  const CMat f = fourier_basis(m);
  CVec u(m);
  for (std::size_t j = 0; j < m; ++j) {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) acc += std::conj(f(k, j)) * r[k];
    u[j] = acc / lambda[j];
  }
  DecodeResult out;
  out.labels.resize(m);
  out.symbols.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) acc += f(k, j) * u[j];
    const cplx est = acc / (static_cast<double>(m) * scale * weights[k]);
    out.labels[k] = q.nearest(est);
    out.symbols[k] = q.point(out.labels[k]);
  }

  double metric = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < m; ++j) s += base_row[(j + m - k) % m] * weights[j] * out.symbols[j];
    metric += std::norm(r[k] - scale * s);
  }
  out.metric = metric;
  out.complexity = static_cast<std::uint64_t>(m) * q.order();
  return out;
}

}  // namespace codediv
