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

#include "codediv/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "codediv/channel.hpp"
#include "codediv/codes.hpp"
#include "codediv/constellation.hpp"
#include "codediv/decoders.hpp"
#include "codediv/diversity.hpp"
#include "codediv/parallel.hpp"

namespace codediv {
namespace {

std::string fmt(const char* f, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

CVec random_symbols(std::size_t l, Rng& rng) {
  ComplexGaussian cg;
  CVec c(l);
  for (auto& x : c) x = cg(rng, 1.0);
  return c;
}

CVec row0(const CMat& h) {
  CVec r(h.cols());
  for (std::size_t j = 0; j < r.size(); ++j) r[j] = h(0, j);
  return r;
}

PropertyCheck transference(std::uint64_t seed) {
  Rng rng = block_rng(seed, 0x7a, 0);
  double worst = 0.0;
  for (const CodeSpec& code : CodeSpec::fixed_catalog()) {
    const std::size_t max_rx = code.is_circulant() ? 1 : 2;
    for (std::size_t n = 1; n <= max_rx; ++n) {
      for (int trial = 0; trial < 100; ++trial) {
        const CMat h = sample_channel(code.antennas(), n, 1.0, rng).h;
        const CVec c = random_symbols(code.symbols(), rng);
        const CVec r = code.receive(h * code.encode(c));
        const InducedChannel ind = code.induce(h);
        const CVec x = ind.domain == SymbolDomain::RealPairs ? realify(c) : c;
        const CVec hc = ind.matrix * x;
        double scale = frobenius_norm(r);
        double err = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) err = std::max(err, std::abs(r[i] - hc[i]));
        worst = std::max(worst, err / std::max(1.0, scale));
      }
    }
  }
  return {"transference identity, 7 codes x 100 draws", worst < 1e-10, fmt("max error %.3g", worst)};
}

PropertyCheck hadamard(std::uint64_t seed) {
  Rng rng = block_rng(seed, 0x4ad, 0);
  double worst = 0.0;
  for (const char* name : {"alamouti", "ostbc34"}) {
    const CodeSpec code = CodeSpec::from_name(name);
    for (int trial = 0; trial < 100; ++trial) {
      const CMat h = sample_channel(code.antennas(), 1, 1.0, rng).h;
      const CMat g = gram(code.induce(h).matrix);
      double diag = 1.0;
      for (std::size_t i = 0; i < g.rows(); ++i) diag *= g(i, i).real();
      const double d = det(g).real();
      worst = std::max(worst, std::abs(d - diag) / std::abs(diag));
    }
  }
  return {"Hadamard equality for orthogonal designs", worst < 1e-9, fmt("max relative gap %.3g", worst)};
}

PropertyCheck qostbc_det(std::uint64_t seed) {
  Rng rng = block_rng(seed, 0xde7, 0);
  const CodeSpec code = CodeSpec::from_name("qostbc");
  double worst = 0.0;
  bool nonneg = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const CMat h = sample_channel(4, 1, 1.0, rng).h;
    const auto [a, b] = qostbc_grammian_terms(row0(h));
    const double expect = (a * a - b * b) * (a * a - b * b);
    const double got = det(gram(code.induce(h).matrix)).real();
    worst = std::max(worst, std::abs(got - expect) / (a * a * a * a));
    nonneg = nonneg && a - std::abs(b) >= -1e-12 * a;
  }
  return {"QOSTBC det = (a^2 - b^2)^2 >= 0, 1000 channels", nonneg && worst < 1e-8,
          fmt("max relative gap %.3g", worst)};
}

PropertyCheck closed_form_matches_brute_force(std::uint64_t seed) {
  Rng rng = block_rng(seed, 0xcf, 0);
  const CodeSpec code = CodeSpec::from_name("qostbc");
  int mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const CMat h = sample_channel(4, 1, 1.0, rng).h;
    const CVec g = row0(h);
    const FeedbackDecision cf = select_qostbc_closed_form(g, 4);
    const SiteRef site{0, 0};
    const FeedbackDecision bf = select_generic(code, h, std::span(&site, 1), 4);
    const double scale = std::max(std::abs(cf.objective), std::abs(bf.objective));
    if (cf.sites[0].k != bf.sites[0].k && std::abs(cf.objective - bf.objective) > 1e-12 * scale) ++mismatches;
  }
  return {"closed-form = brute-force QOSTBC feedback, 1000 channels", mismatches == 0,
          std::to_string(mismatches) + " mismatches"};
}

PropertyCheck circulant_eigen(std::uint64_t seed) {
  Rng rng = block_rng(seed, 0xe16, 0);
  double worst = 0.0;
  for (const char* name : {"circulant3", "circulantM"}) {
    const CodeSpec code = CodeSpec::from_name(name);
    for (int trial = 0; trial < 100; ++trial) {
      const CMat h = sample_channel(code.antennas(), 1, 1.0, rng).h;
      const CVec eta = code.circulant_base_row(row0(h));
      const CMat c = induce_circulant(eta);
      const CMat f = fourier_basis(eta.size());
      const CVec lambda = circulant_eigenvalues(eta);
      for (std::size_t j = 0; j < eta.size(); ++j) {
        const CVec fj = f.col(j);
        const CVec cf = c * fj;
        cplx hf = 0.0;
        for (std::size_t k = 0; k < eta.size(); ++k) hf += eta[k] * fj[k];
        worst = std::max(worst, std::abs(hf - lambda[j]));
        for (std::size_t k = 0; k < eta.size(); ++k) worst = std::max(worst, std::abs(cf[k] - hf * fj[k]));
      }
    }
  }
  return {"circulant eigenvalues lambda_j = h f_j", worst < 1e-10, fmt("max error %.3g", worst)};
}

PropertyCheck fourier_equals_zf(std::uint64_t seed) {
  Rng rng = block_rng(seed, 0xf0, 0);
  const Constellation q(4);
  ComplexGaussian cg;
  int mismatches = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    const CodeSpec code = CodeSpec::from_name(t % 2 ? "circulantM" : "circulant3");
    const CMat h = sample_channel(code.antennas(), 1, 1.0, rng).h;
    CVec c(code.symbols());
    for (auto& x : c) x = q.point(static_cast<unsigned>(rng() & 3));
    const double scale = 2.0;
    CMat y = h * code.encode(c);
    y *= scale;
    for (std::size_t k = 0; k < y.cols(); ++k) y(0, k) += cg(rng, 1.0);
    const CVec r = code.receive(y);
    const DecodeResult zf = zf_decode(code.induce(h), r, q, scale);
    const std::vector<double> w = code.symbol_weights();
    const DecodeResult fd = circulant_fourier_decode(code.circulant_base_row(row0(h)), r, q, w, scale);
    if (zf.labels != fd.labels) ++mismatches;
  }
  return {"Fourier decoder = ZF, 10^4 noisy trials", mismatches == 0, std::to_string(mismatches) + " mismatches"};
}

double min_difference_det(const CodeSpec& code) {
  const Constellation q(4);
  const std::size_t l = code.symbols();
  std::size_t total = 1;
  for (std::size_t i = 0; i < l; ++i) total *= 4;
  std::vector<CMat> words;
  words.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    CVec c(l);
    std::size_t v = idx;
    for (std::size_t i = 0; i < l; ++i, v /= 4) c[i] = q.point(static_cast<unsigned>(v % 4));
    words.push_back(code.encode(c));
  }
  double worst = INFINITY;
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = i + 1; j < total; ++j) worst = std::min(worst, std::abs(det(words[i] - words[j])));
  return worst;
}

PropertyCheck min_determinants() {
  const double circ = min_difference_det(CodeSpec::from_name("circulant3"));
  const double g1 = min_difference_det(CodeSpec::from_name("golden-g1"));
  const double g2 = min_difference_det(CodeSpec::from_name("golden-g2"));
  char buf[160];
  std::snprintf(buf, sizeof buf, "min |det| circulant3 %.4g, golden-g1 %.4g, golden-g2 %.4g", circ, g1, g2);
  const double tol = 1e-9;
  return {"nonzero minimum determinant, exhaustive 4-QAM", circ > tol && g1 > tol && g2 > tol, buf};
}

PropertyCheck alamouti_zf_equals_ml(std::uint64_t seed) {
  Rng rng = block_rng(seed, 0xa1a, 0);
  const Constellation q(4);
  const CodeSpec code = CodeSpec::from_name("alamouti");
  ComplexGaussian cg;
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const CMat h = sample_channel(2, 1, 1.0, rng).h;
    const InducedChannel ind = code.induce(h);
    for (unsigned a = 0; a < 4; ++a) {
      for (unsigned b = 0; b < 4; ++b) {
        const CVec c{q.point(a), q.point(b)};
        CMat y = h * code.encode(c);
        for (std::size_t k = 0; k < y.cols(); ++k) y(0, k) += cg(rng, 0.5);
        const CVec r = code.receive(y);
        if (zf_decode(ind, r, q, 1.0).labels != ml_decode(ind, r, q, 1.0).labels) ++mismatches;
      }
    }
  }
  return {"Alamouti ZF = ML, exhaustive 4-QAM x 200 channels", mismatches == 0,
          std::to_string(mismatches) + " mismatches"};
}

}  // namespace

std::vector<PropertyCheck> run_property_suites(std::uint64_t seed) {
  return {transference(seed),
          hadamard(seed),
          qostbc_det(seed),
          closed_form_matches_brute_force(seed),
          circulant_eigen(seed),
          fourier_equals_zf(seed),
          min_determinants(),
          alamouti_zf_equals_ml(seed)};
}

}  // namespace codediv
