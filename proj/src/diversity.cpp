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

#include "codediv/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "codediv/errors.hpp"

namespace codediv {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTieTolerance = 1e-12;

struct RankedObjective {
  std::size_t rank = 0;
  double log_sum = 0.0;
  double product = 0.0;
};

RankedObjective evaluate_grammian(const CodeSpec& code, const CMat& h) {
  const InducedChannel ind = code.induce(h);
  const EigenSpectrum s = hermitian_eigenvalues(gram(ind.matrix));
  return {s.rank(), s.nonzero_log_sum(), s.nonzero_product()};
}

bool strictly_better(const RankedObjective& x, const RankedObjective& best) {
  if (x.rank != best.rank) return x.rank > best.rank;
  return x.log_sum > best.log_sum + kTieTolerance * std::max(1.0, std::abs(best.log_sum));
}

cplx rotation(double theta) { return std::polar(1.0, theta); }

void require_gains(std::span<const cplx> h, std::size_t n, const char* what) {
  require(h.size() == n, what);
}

}  // namespace

unsigned feedback_bits_for(unsigned levels) noexcept {
  unsigned bits = 0;
  while ((1ULL << bits) < levels) ++bits;
  return bits;
}

FeedbackDecision select_generic(const CodeSpec& code, const CMat& h, std::span<const SiteRef> sites,
                                unsigned levels) {
  require(levels >= 1, "select_generic: K must be at least 1");
  for (const SiteRef& s : sites) {
    require(s.tx < h.cols() && s.rx < h.rows(), "select_generic: site outside the channel");
  }

  std::vector<PhaseSite> current(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) current[i] = {sites[i].tx, sites[i].rx, 1, levels};

  FeedbackDecision out;
  out.feedback_bits = static_cast<unsigned>(sites.size()) * feedback_bits_for(levels);
  if (levels == 1 || sites.empty()) {
    // Every rotation is the identity.
    out.sites = current;
    const RankedObjective r = evaluate_grammian(code, h);
    out.objective = r.product;
    out.rank = r.rank;
    return out;
  }

  bool have = false;
  RankedObjective best;
  for (;;) {
    const RankedObjective r = evaluate_grammian(code, apply_phase(h, current));
    if (!have || strictly_better(r, best)) {
      best = r;
      out.sites = current;
      have = true;
    }
    // Odometer over k in 1..K, last site fastest.
    std::size_t pos = current.size();
    while (pos > 0 && current[pos - 1].k == levels) current[--pos].k = 1;
    if (pos == 0) break;
    ++current[pos - 1].k;
  }
  out.objective = best.product;
  out.rank = best.rank;
  return out;
}

double qostbc_b_after_rotation(std::span<const cplx> h, double theta) {
  require_gains(h, 4, "QOSTBC needs four gains");
  const cplx p = h[0] * std::conj(h[3]) * rotation(theta);
  const cplx q = h[1] * std::conj(h[2]);
  return 2.0 * p.real() - 2.0 * q.real();
}

FeedbackDecision select_qostbc_closed_form(std::span<const cplx> h, unsigned levels) {
  require_gains(h, 4, "QOSTBC needs four gains");
  require(levels >= 1, "select_qostbc_closed_form: K must be at least 1");
  const cplx p = h[0] * std::conj(h[3]);
  if (p == cplx{}) {
    const CMat row{{h[0], h[1], h[2], h[3]}};
    const SiteRef site{0, 0};
    FeedbackDecision d = select_generic(CodeSpec::from_name("qostbc"), row, std::span(&site, 1), levels);
    d.fallback = true;
    return d;
  }

  const double a = qostbc_grammian_terms(h).a;
  unsigned best_k = 1;
  double best_abs_b = 0.0;
  for (unsigned k = 1; k <= levels; ++k) {
    const double b = std::abs(qostbc_b_after_rotation(h, kTwoPi * k / levels));
    if (k == 1 || b < best_abs_b - kTieTolerance * std::max(1.0, a)) {
      best_abs_b = b;
      best_k = k;
    }
  }
  FeedbackDecision d;
  d.sites = {PhaseSite{0, 0, best_k, levels}};
  d.feedback_bits = feedback_bits_for(levels);
  // The Grammian splits into two 2x2 blocks [[a, +-b], [+-b, a]].
  const double a2 = a * a;
  const double gap = a2 - best_abs_b * best_abs_b;
  d.objective = gap * gap;
  d.rank = gap > kRelativeRankTolerance * a2 ? 4 : 2;
  return d;
}

double qostbc_alignment_phase(std::span<const cplx> h) {
  require_gains(h, 4, "QOSTBC needs four gains");
  const cplx p = h[0] * std::conj(h[3]);
  require(p != cplx{}, "alignment phase undefined when h1 h4* = 0");
  return std::arg(h[1] * std::conj(h[2]) / p);
}

double qostbc_optimal_phase(std::span<const cplx> h) {
  require_gains(h, 4, "QOSTBC needs four gains");
  const cplx p = h[0] * std::conj(h[3]);
  require(p != cplx{}, "optimal phase undefined when h1 h4* = 0");
  // b(theta) = 2|p| cos(theta + arg p) - 2 Re(h2 h3*)
  const double c = (h[1] * std::conj(h[2])).real() / std::abs(p);
  double theta;
  if (c >= 1.0) {
    theta = -std::arg(p);
  } else if (c <= -1.0) {
    theta = std::numbers::pi - std::arg(p);
  } else {
    theta = std::acos(c) - std::arg(p);
  }
  theta = std::fmod(theta, kTwoPi);
  if (theta < 0.0) theta += kTwoPi;
  return theta;
}

unsigned nearest_phase_index(double theta, unsigned levels) {
  require(levels >= 1, "nearest_phase_index: K must be at least 1");
  unsigned best = 1;
  double best_d = 0.0;
  for (unsigned k = 1; k <= levels; ++k) {
    double d = std::fmod(std::abs(kTwoPi * k / levels - theta), kTwoPi);
    d = std::min(d, kTwoPi - d);
    if (k == 1 || d < best_d - kTieTolerance) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

double interference_coefficient(const CMat& hs, const CMat& gs) {
  const double nh = frobenius_norm(hs);
  const double ng = frobenius_norm(gs);
  require(nh > 0.0 && ng > 0.0, "interference_coefficient: zero-norm channel");
  return frobenius_norm(hs.adjoint() * gs) / (nh * ng);
}

namespace {

CMat alamouti_block(cplx a, cplx b) { return CMat{{a, b}, {-std::conj(b), std::conj(a)}}; }

CMat stack(const CMat& top, const CMat& bottom) {
  CMat out(top.rows() + bottom.rows(), top.cols());
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) out(i, j) = top(i, j);
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    for (std::size_t j = 0; j < bottom.cols(); ++j) out(top.rows() + i, j) = bottom(i, j);
  return out;
}

}  // namespace

CMat TwoUserBlocks::stacked_h() const { return stack(h1, h2); }
CMat TwoUserBlocks::stacked_g() const { return stack(g1, g2); }

TwoUserBlocks two_user_blocks(const TwoUserGains& g, cplx gamma1, cplx gamma2) {
  return {alamouti_block(g.h11 * gamma1, g.h21), alamouti_block(g.h12 * gamma1, g.h22),
          alamouti_block(g.g11 * gamma2, g.g21), alamouti_block(g.g12 * gamma2, g.g22)};
}

FeedbackDecision select_multiuser(const TwoUserGains& g, unsigned levels1, unsigned levels2) {
  require(levels1 >= 1 && levels2 >= 1, "select_multiuser: K1 and K2 must be at least 1");
  FeedbackDecision d;
  d.feedback_bits = feedback_bits_for(levels1) + feedback_bits_for(levels2);
  unsigned best1 = 1, best2 = 1;
  double best = 0.0;
  for (unsigned k1 = 1; k1 <= levels1; ++k1) {
    for (unsigned k2 = 1; k2 <= levels2; ++k2) {
      const TwoUserBlocks b =
          two_user_blocks(g, rotation(kTwoPi * k1 / levels1), rotation(kTwoPi * k2 / levels2));
      const double lambda = interference_coefficient(b.stacked_h(), b.stacked_g());
      if ((k1 == 1 && k2 == 1) || lambda < best - kTieTolerance) {
        best = lambda;
        best1 = k1;
        best2 = k2;
      }
    }
  }
  d.sites = {PhaseSite{0, 0, best1, levels1}, PhaseSite{0, 0, best2, levels2}};
  d.objective = best;
  return d;
}

TwoUserBlocks apply_multiuser(const TwoUserGains& g, const FeedbackDecision& d) {
  require(d.sites.size() == 2, "apply_multiuser: decision needs two sites");
  return two_user_blocks(g, rotation(d.sites[0].angle()), rotation(d.sites[1].angle()));
}

FeedbackDecision select_golden_variant(std::span<const cplx> h, unsigned receive_count) {
  require(receive_count == 1 || receive_count == 2, "select_golden_variant: 1 or 2 receive antennas");
  require(h.size() == 2 * receive_count, "select_golden_variant: expected 2 gains per receive antenna");
  double e1 = std::norm(h[0]);
  double e2 = std::norm(h[1]);
  if (receive_count == 2) {
    e1 += std::norm(h[2]);
    e2 += std::norm(h[3]);
  }
  constexpr double tau2 = kGoldenTau * kGoldenTau;
  constexpr double mu2 = kGoldenMu * kGoldenMu;
  FeedbackDecision d;
  d.feedback_bits = 1;
  d.variant = e1 >= e2 ? GoldenVariant::G1 : GoldenVariant::G2;
  // S = E_large (1 + tau^2) + E_small (1 + mu^2) for the chosen variant.
  const double hi = std::max(e1, e2);
  const double lo = std::min(e1, e2);
  d.objective = hi * (1.0 + tau2) + lo * (1.0 + mu2);
  return d;
}

FeedbackDecision select_circulant(std::span<const cplx> h, unsigned levels, CirculantPhaseStep step) {
  require(levels >= 1, "select_circulant: K must be at least 1");
  require(!h.empty(), "select_circulant: empty channel");
  // A step of pi/K is the 2K-point grid restricted to k = 1..K.
  const unsigned grid = step == CirculantPhaseStep::HalfTurnOverK ? 2 * levels : levels;
  CVec row(h.begin(), h.end());
  unsigned best_k = 1;
  double best = 0.0;
  for (unsigned k = 1; k <= levels; ++k) {
    row[0] = h[0] * rotation(kTwoPi * k / grid);
    double prod = 1.0;
    for (const cplx& lam : circulant_eigenvalues(row)) prod *= std::abs(lam);
    if (k == 1 || prod > best + kTieTolerance * std::max(1.0, best)) {
      best = prod;
      best_k = k;
    }
  }
  FeedbackDecision d;
  d.sites = {PhaseSite{0, 0, best_k, grid}};
  d.objective = best;
  d.feedback_bits = feedback_bits_for(levels);
  return d;
}

FeedbackOutcome apply_feedback(const CodeSpec& code, const CMat& h, const FeedbackConfig& fb) {
  using Kind = FeedbackConfig::Kind;
  const auto row0 = [&h] {
    CVec r(h.cols());
    for (std::size_t j = 0; j < h.cols(); ++j) r[j] = h(0, j);
    return r;
  };
  switch (fb.kind) {
    case Kind::None:
      return {h, code, {}};
    case Kind::Generic: {
      require(fb.phase_sites >= 1 && fb.phase_sites <= h.cols(), "phase_sites outside the channel");
      std::vector<SiteRef> sites(fb.phase_sites);
      for (std::size_t i = 0; i < sites.size(); ++i) sites[i] = {i, 0};
      FeedbackDecision d = select_generic(code, h, sites, fb.levels);
      return {apply_phase(h, d.sites), code, std::move(d)};
    }
    case Kind::ClosedForm: {
      require(code.id() == CodeId::Qostbc && h.rows() == 1, "closed-form feedback needs QOSTBC 4x1");
      const CVec g = row0();
      FeedbackDecision d = select_qostbc_closed_form(g, fb.levels);
      return {apply_phase(h, d.sites), code, std::move(d)};
    }
    case Kind::Golden: {
      require(code.is_golden(), "golden feedback needs a Golden code");
      CVec g;
      for (std::size_t r = 0; r < h.rows(); ++r)
        for (std::size_t j = 0; j < h.cols(); ++j) g.push_back(h(r, j));
      FeedbackDecision d = select_golden_variant(g, static_cast<unsigned>(h.rows()));
      return {h, code.with_golden_variant(*d.variant), std::move(d)};
    }
    case Kind::Circulant: {
      require(code.is_circulant() && h.rows() == 1, "circulant feedback needs a circulant code, 1 rx");
      const CVec g = row0();
      FeedbackDecision d = select_circulant(g, fb.levels, fb.step);
      return {apply_phase(h, d.sites), code, std::move(d)};
    }
    case Kind::Multiuser:
      break;
  }
  throw ContractViolation("apply_feedback: multiuser feedback is not a single-user selection");
}

}  // namespace codediv
