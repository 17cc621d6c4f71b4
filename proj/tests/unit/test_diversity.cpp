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

#include <catch_amalgamated.hpp>

#include <numbers>

#include "codediv/diversity.hpp"
#include "codediv/errors.hpp"

using namespace codediv;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

CVec gains(const CMat& h) {
  CVec g;
  for (std::size_t j = 0; j < h.cols(); ++j) g.push_back(h(0, j));
  return g;
}

double qostbc_det(const CMat& h) {
  return det(gram(CodeSpec::from_name("qostbc").induce(h).matrix)).real();
}

TwoUserGains random_two_user(Rng& rng) {
  ComplexGaussian cg;
  TwoUserGains g;
  g.h11 = cg(rng, 1.0);
  g.h21 = cg(rng, 1.0);
  g.g12 = cg(rng, 1.0);
  g.g22 = cg(rng, 1.0);
  g.h12 = cg(rng, 0.5);
  g.h22 = cg(rng, 0.5);
  g.g11 = cg(rng, 0.5);
  g.g21 = cg(rng, 0.5);
  return g;
}

}  // namespace

TEST_CASE("feedback bits") {
  CHECK(feedback_bits_for(1) == 0);
  CHECK(feedback_bits_for(2) == 1);
  CHECK(feedback_bits_for(4) == 2);
  CHECK(feedback_bits_for(5) == 3);
}

TEST_CASE("generic selection with K = 1 keeps the channel") {
  const CMat h{{1.0, 0.0, 0.0, 1.0}};
  const SiteRef site{0, 0};
  const auto d = select_generic(CodeSpec::from_name("qostbc"), h, std::span(&site, 1), 1);
  CHECK(d.sites[0].k == 1);
  CHECK(d.feedback_bits == 0);
  CHECK(d.rank == 2);
}

TEST_CASE("generic selection repairs the singular QOSTBC channel") {
  const CMat h{{1.0, 0.0, 0.0, 1.0}};
  CHECK(std::abs(qostbc_det(h)) < 1e-12);
  const SiteRef site{0, 0};
  const auto d = select_generic(CodeSpec::from_name("qostbc"), h, std::span(&site, 1), 4);
  CHECK(d.sites[0].k == 1);  // phase pi/2; 3 pi/2 ties and loses to the earlier index
  CHECK(d.objective == Approx(16.0));
  CHECK(d.rank == 4);
  CHECK(d.feedback_bits == 2);
  CHECK(qostbc_det(apply_phase(h, d.sites)) == Approx(16.0));
}

TEST_CASE("generic selection never lowers the determinant when k = K is available") {
  Rng rng(1);
  const CodeSpec q = CodeSpec::from_name("qostbc");
  const SiteRef site{0, 0};
  for (int t = 0; t < 300; ++t) {
    const CMat h = sample_channel(4, 1, 1.0, rng).h;
    const auto d = select_generic(q, h, std::span(&site, 1), 4);
    CHECK(d.objective >= qostbc_det(h) * (1.0 - 1e-12));
    CHECK(d.objective == Approx(qostbc_det(apply_phase(h, d.sites))).epsilon(1e-10));
  }
}

TEST_CASE("generic selection over two sites is exhaustive") {
  Rng rng(2);
  const CodeSpec q = CodeSpec::from_name("qostbc");
  const SiteRef sites[] = {{0, 0}, {2, 0}};
  for (int t = 0; t < 20; ++t) {
    const CMat h = sample_channel(4, 1, 1.0, rng).h;
    const auto d = select_generic(q, h, sites, 3);
    double best = 0.0;
    for (unsigned a = 1; a <= 3; ++a) {
      for (unsigned b = 1; b <= 3; ++b) {
        const PhaseSite ps[] = {{0, 0, a, 3}, {2, 0, b, 3}};
        best = std::max(best, qostbc_det(apply_phase(h, ps)));
      }
    }
    CHECK(d.objective == Approx(best).epsilon(1e-10));
    CHECK(d.feedback_bits == 4);
  }
}

TEST_CASE("generic selection rejects sites outside the channel") {
  const CMat h{{1.0, 1.0}};
  const SiteRef site{3, 0};
  CHECK_THROWS_AS(select_generic(CodeSpec::from_name("alamouti"), h, std::span(&site, 1), 4),
                  ContractViolation);
}

TEST_CASE("closed-form QOSTBC selection examples") {
  const CVec ones{1.0, 1.0, 1.0, 1.0};
  CHECK(select_qostbc_closed_form(ones, 4).sites[0].k == 4);
  CHECK(select_qostbc_closed_form(ones, 8).sites[0].k == 8);
  const CVec flip{1.0, 1.0, 1.0, -1.0};
  CHECK(select_qostbc_closed_form(flip, 4).sites[0].k == 2);
  CHECK(select_qostbc_closed_form(flip, 6).sites[0].k == 3);
  CHECK(qostbc_alignment_phase(ones) == Approx(0.0).margin(1e-15));
  CHECK(std::abs(qostbc_alignment_phase(flip)) == Approx(kPi));
}

TEST_CASE("closed-form selection equals brute force") {
  Rng rng(3);
  const CodeSpec q = CodeSpec::from_name("qostbc");
  const SiteRef site{0, 0};
  for (unsigned levels : {2u, 4u, 8u}) {
    for (int t = 0; t < 300; ++t) {
      const CMat h = sample_channel(4, 1, 1.0, rng).h;
      const auto cf = select_qostbc_closed_form(gains(h), levels);
      const auto bf = select_generic(q, h, std::span(&site, 1), levels);
      CHECK_FALSE(cf.fallback);
      CHECK(cf.objective == Approx(bf.objective).epsilon(1e-9));
      CHECK(cf.objective == Approx(qostbc_det(apply_phase(h, cf.sites))).epsilon(1e-9));
      // Brute-force argmin |b| over the grid.
      double best = INFINITY;
      for (unsigned k = 1; k <= levels; ++k)
        best = std::min(best, std::abs(qostbc_b_after_rotation(gains(h), 2.0 * kPi * k / levels)));
      const double got = std::abs(qostbc_b_after_rotation(gains(h), cf.sites[0].angle()));
      CHECK(got <= best + 1e-12);
    }
  }
}

TEST_CASE("closed-form selection falls back when h1 h4* = 0") {
  const CVec h{0.0, 1.0, cplx(0.0, 1.0), 1.0};
  const auto d = select_qostbc_closed_form(h, 4);
  CHECK(d.fallback);
  CHECK(d.sites.size() == 1);
}

TEST_CASE("continuous optimum zeroes b when reachable") {
  Rng rng(4);
  int reachable = 0;
  for (int t = 0; t < 1000; ++t) {
    const CMat h = sample_channel(4, 1, 1.0, rng).h;
    const CVec g = gains(h);
    const double p = std::abs(g[0] * std::conj(g[3]));
    const double q = (g[1] * std::conj(g[2])).real();
    const double b = qostbc_b_after_rotation(g, qostbc_optimal_phase(g));
    if (std::abs(q) <= p) {
      ++reachable;
      CHECK(std::abs(b) < 1e-12);
    } else {
      CHECK(std::abs(b) == Approx(2.0 * (std::abs(q) - p)).margin(1e-12));
    }
  }
  CHECK(reachable > 100);
}

TEST_CASE("nearest phase index on the circle") {
  CHECK(nearest_phase_index(0.0, 4) == 4);
  CHECK(nearest_phase_index(kPi, 4) == 2);
  CHECK(nearest_phase_index(-kPi / 2.0, 4) == 3);
  CHECK(nearest_phase_index(kPi / 4.0, 4) == 1);  // tie between k = 1 and k = 4
  CHECK(nearest_phase_index(1.0, 1) == 1);
}

TEST_CASE("interference coefficient examples") {
  Rng rng(5);
  const TwoUserGains g = random_two_user(rng);
  const TwoUserBlocks b = two_user_blocks(g);
  CHECK(interference_coefficient(b.stacked_h(), b.stacked_h()) == Approx(1.0 / std::sqrt(2.0)));

  CMat hs(4, 2), gs(4, 2);
  hs(0, 0) = 1.0;
  hs(1, 1) = 1.0;
  gs(2, 0) = 1.0;
  gs(3, 1) = 1.0;
  CHECK(interference_coefficient(hs, gs) == 0.0);
  CHECK_THROWS_AS(interference_coefficient(CMat(4, 2), gs), ContractViolation);

  for (int t = 0; t < 200; ++t) {
    const TwoUserBlocks r = two_user_blocks(random_two_user(rng));
    const double l = interference_coefficient(r.stacked_h(), r.stacked_g());
    CHECK(l >= 0.0);
    CHECK(l <= 1.0);
  }
}

TEST_CASE("adapted blocks follow the Alamouti block layout") {
  TwoUserGains g{1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0};
  const cplx gamma = std::polar(1.0, 0.3);
  const TwoUserBlocks b = two_user_blocks(g, gamma, 1.0);
  CHECK(std::abs(b.h1(0, 0) - 1.0 * gamma) < 1e-15);
  CHECK(std::abs(b.h1(1, 1) - std::conj(1.0 * gamma)) < 1e-15);
  CHECK(std::abs(b.h2(0, 0) - 3.0 * gamma) < 1e-15);
  CHECK(b.h1(0, 1) == 2.0);
  CHECK(b.h1(1, 0) == -2.0);
  CHECK(b.g1(0, 0) == 5.0);
  CHECK(b.g2(0, 1) == 8.0);
}

TEST_CASE("multi-user selection is the grid minimum") {
  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    const TwoUserGains g = random_two_user(rng);
    const TwoUserBlocks b0 = two_user_blocks(g);
    const double base = interference_coefficient(b0.stacked_h(), b0.stacked_g());
    const auto one = select_multiuser(g, 1, 1);
    CHECK(one.objective == Approx(base).epsilon(1e-12));

    const auto d = select_multiuser(g, 4, 4);
    double best = INFINITY;
    for (unsigned a = 1; a <= 4; ++a) {
      for (unsigned c = 1; c <= 4; ++c) {
        const TwoUserBlocks b = two_user_blocks(g, std::polar(1.0, 2.0 * kPi * a / 4), std::polar(1.0, 2.0 * kPi * c / 4));
        best = std::min(best, interference_coefficient(b.stacked_h(), b.stacked_g()));
      }
    }
    CHECK(d.objective == Approx(best).epsilon(1e-12));
    CHECK(d.objective <= base + 1e-12);
    CHECK(d.feedback_bits == 4);
    const TwoUserBlocks applied = apply_multiuser(g, d);
    CHECK(interference_coefficient(applied.stacked_h(), applied.stacked_g()) == Approx(d.objective));

    // Nested grids: 2 divides 4, so the finer grid can only do better.
    const auto coarse = select_multiuser(g, 2, 2);
    CHECK(d.objective <= coarse.objective + 1e-12);
  }
}

TEST_CASE("Golden variant selection examples") {
  CHECK(*select_golden_variant(CVec{2.0, 1.0}, 1).variant == GoldenVariant::G1);
  CHECK(*select_golden_variant(CVec{1.0, 2.0}, 1).variant == GoldenVariant::G2);
  CHECK(*select_golden_variant(CVec{1.0, 1.0, 2.0, 1.0}, 2).variant == GoldenVariant::G1);
  CHECK(*select_golden_variant(CVec{1.0, 1.0}, 1).variant == GoldenVariant::G1);
  CHECK(select_golden_variant(CVec{1.0, 2.0}, 1).feedback_bits == 1);
  CHECK_THROWS_AS(select_golden_variant(CVec{1.0, 2.0, 3.0}, 1), ContractViolation);
}

TEST_CASE("Golden selection is invariant to a common scale") {
  Rng rng(7);
  for (int t = 0; t < 500; ++t) {
    const CMat h = sample_channel(2, 2, 1.0, rng).h;
    CVec g{h(0, 0), h(0, 1), h(1, 0), h(1, 1)};
    const auto a = select_golden_variant(g, 2);
    for (auto& x : g) x *= 3.7;
    CHECK(*select_golden_variant(g, 2).variant == *a.variant);
  }
}

TEST_CASE("Golden objective is the larger of the two SNR factors") {
  const double t2 = kGoldenTau * kGoldenTau, m2 = kGoldenMu * kGoldenMu;
  const auto d = select_golden_variant(CVec{1.0, 2.0}, 1);
  CHECK(d.objective == Approx(4.0 * (1.0 + t2) + 1.0 * (1.0 + m2)));
}

TEST_CASE("circulant selection examples") {
  const CVec e{1.0, 0.0, 0.0};
  for (unsigned k : {1u, 3u, 8u}) CHECK(select_circulant(e, k).objective == Approx(1.0));

  const CVec ones{1.0, 1.0, 1.0};
  const auto d = select_circulant(ones, 4);
  CHECK(d.objective > 1e-6);
  // Unrotated objective is zero.
  double prod = 1.0;
  for (const cplx& l : circulant_eigenvalues(ones)) prod *= std::abs(l);
  CHECK(prod < 1e-12);
}

TEST_CASE("circulant selection uses the pi/K grid by default") {
  const CVec ones{1.0, 1.0, 1.0};
  const auto half = select_circulant(ones, 4);
  CHECK(half.sites[0].levels == 8);
  const auto full = select_circulant(ones, 4, CirculantPhaseStep::FullTurnOverK);
  CHECK(full.sites[0].levels == 4);
  CHECK(half.feedback_bits == 2);
  CHECK(full.feedback_bits == 2);
}

TEST_CASE("circulant objective matches the Grammian determinant") {
  Rng rng(8);
  const CodeSpec m4 = CodeSpec::from_name("circulantM");
  const CodeSpec c3 = CodeSpec::from_name("circulant3");
  const auto w = CirculantWeights::golden();
  for (int t = 0; t < 100; ++t) {
    const CMat h4 = sample_channel(4, 1, 1.0, rng).h;
    const auto d4 = select_circulant(gains(h4), 4);
    const double det4 = det(gram(m4.induce(apply_phase(h4, d4.sites)).matrix)).real();
    CHECK(d4.objective == Approx(std::sqrt(det4)).epsilon(1e-9));

    const CMat h3 = sample_channel(3, 1, 1.0, rng).h;
    const auto d3 = select_circulant(gains(h3), 4);
    const double det3 = det(gram(c3.induce(apply_phase(h3, d3.sites)).matrix)).real();
    CHECK(d3.objective * std::abs(w.alpha * w.beta) == Approx(std::sqrt(det3)).epsilon(1e-9));

    // The selection dominates the k = K member of its grid.
    double at_k = 1.0;
    CVec g = gains(h3);
    g[0] *= std::polar(1.0, kPi);
    for (const cplx& l : circulant_eigenvalues(g)) at_k *= std::abs(l);
    CHECK(d3.objective >= at_k * (1.0 - 1e-12));
  }
}

TEST_CASE("apply_feedback resolves each feedback kind") {
  Rng rng(9);
  const CMat h4 = sample_channel(4, 1, 1.0, rng).h;
  FeedbackConfig fb;
  fb.kind = FeedbackConfig::Kind::ClosedForm;
  const auto cf = apply_feedback(CodeSpec::from_name("qostbc"), h4, fb);
  CHECK(cf.decision.sites.size() == 1);
  CHECK(max_abs_diff(cf.h, apply_phase(h4, cf.decision.sites)) == 0.0);

  fb.kind = FeedbackConfig::Kind::Golden;
  const CMat h2{{1.0, 2.0}};
  const auto gd = apply_feedback(CodeSpec::from_name("golden-cd"), h2, fb);
  CHECK(gd.code.golden_variant() == GoldenVariant::G2);

  fb.kind = FeedbackConfig::Kind::None;
  CHECK(apply_feedback(CodeSpec::from_name("qostbc"), h4, fb).h == h4);

  fb.kind = FeedbackConfig::Kind::Multiuser;
  CHECK_THROWS_AS(apply_feedback(CodeSpec::from_name("alamouti"), h2, fb), ContractViolation);
}
