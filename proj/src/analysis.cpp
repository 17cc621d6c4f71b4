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

#include "codediv/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "codediv/channel.hpp"
#include "codediv/errors.hpp"
#include "codediv/parallel.hpp"

namespace codediv {
namespace {

constexpr std::uint64_t kBlockSize = 1024;
constexpr std::uint64_t kCapacityStream = 0xC0;
constexpr std::uint64_t kGoldenStream = 0x601D;

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
  }
  void merge(const Moments& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
};

std::uint64_t block_count(std::uint64_t samples) { return (samples + kBlockSize - 1) / kBlockSize; }

std::uint64_t block_length(std::uint64_t samples, std::uint64_t b) {
  return std::min(kBlockSize, samples - b * kBlockSize);
}

std::vector<CapacityEstimate> finish(std::span<const double> snr_db, const std::vector<Moments>& acc,
                                     std::uint64_t samples) {
  std::vector<CapacityEstimate> out(snr_db.size());
  const double n = static_cast<double>(samples);
  for (std::size_t i = 0; i < snr_db.size(); ++i) {
    const double mean = acc[i].sum / n;
    const double var = samples > 1 ? std::max(0.0, (acc[i].sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
    out[i] = {snr_db[i], mean, std::sqrt(var / n), samples};
  }
  return out;
}

/// Runs `per_sample(h, acc)` for every channel draw, blockwise, and merges
/// the per-SNR moments in block order.
template <class F>
std::vector<CapacityEstimate> capacity_mc(std::size_t m, std::size_t n, std::span<const double> snr_db,
                                          const McOptions& opt, F&& per_sample) {
  require(opt.samples >= 1, "capacity: samples must be at least 1");
  const std::uint64_t blocks = block_count(opt.samples);
  std::vector<std::vector<Moments>> partial(blocks, std::vector<Moments>(snr_db.size()));
  for_each_block(0, blocks, opt.workers, [&](std::size_t b) {
    Rng rng = block_rng(opt.seed, kCapacityStream, b);
    for (std::uint64_t s = 0; s < block_length(opt.samples, b); ++s) {
      const ChannelRealization ch = sample_channel(m, n, opt.sigma2, rng);
      per_sample(ch.h, partial[b]);
    }
  });
  std::vector<Moments> total(snr_db.size());
  for (const auto& p : partial)
    for (std::size_t i = 0; i < total.size(); ++i) total[i].merge(p[i]);
  return finish(snr_db, total, opt.samples);
}

double log2_det_identity_plus(const CMat& g, double f) {
  // log2 det(I + f G) for Hermitian PSD G via its eigenvalues.
  double acc = 0.0;
  for (double w : hermitian_eigen(g).values) acc += std::log2(1.0 + f * std::max(0.0, w));
  return acc;
}

}  // namespace

std::vector<CapacityEstimate> capacity_c0(std::size_t m, std::size_t n, std::span<const double> snr_db,
                                          const McOptions& opt) {
  return capacity_mc(m, n, snr_db, opt, [&](const CMat& h, std::vector<Moments>& acc) {
    const CMat g = gram(h.adjoint());  // H H^H
    const HermitianEigen e = hermitian_eigen(g);
    for (std::size_t i = 0; i < snr_db.size(); ++i) {
      const double f = db_to_linear(snr_db[i]) / static_cast<double>(m);
      double c = 0.0;
      for (double w : e.values) c += std::log2(1.0 + f * std::max(0.0, w));
      acc[i].add(c);
    }
  });
}

double code_capacity(const CodeSpec& code, const InducedChannel& ch, double snr) {
  const double f = snr / static_cast<double>(code.antennas());
  const double t = static_cast<double>(code.slots());
  const double c = log2_det_identity_plus(gram(ch.matrix), f);
  return ch.domain == SymbolDomain::RealPairs ? c / (2.0 * t) : c / t;
}

double code_capacity_high_snr(const CodeSpec& code, const InducedChannel& ch, double snr) {
  const double f = snr / static_cast<double>(code.antennas());
  const double t = static_cast<double>(code.slots());
  const EigenSpectrum s = hermitian_eigenvalues(gram(ch.matrix));
  const double c =
      (s.nonzero_log_sum() + static_cast<double>(s.rank()) * std::log(f)) / std::numbers::ln2;
  return ch.domain == SymbolDomain::RealPairs ? c / (2.0 * t) : c / t;
}

std::vector<CapacityEstimate> capacity_code(const CodeSpec& code, std::size_t n, const FeedbackConfig& fb,
                                            std::span<const double> snr_db, const McOptions& opt) {
  return capacity_mc(code.antennas(), n, snr_db, opt, [&](const CMat& h, std::vector<Moments>& acc) {
    const FeedbackOutcome sel = apply_feedback(code, h, fb);
    const InducedChannel ch = sel.code.induce(sel.h);
    const HermitianEigen e = hermitian_eigen(gram(ch.matrix));
    const double t = static_cast<double>(code.slots()) * (ch.domain == SymbolDomain::RealPairs ? 2.0 : 1.0);
    for (std::size_t i = 0; i < snr_db.size(); ++i) {
      const double f = db_to_linear(snr_db[i]) / static_cast<double>(code.antennas());
      double c = 0.0;
      for (double w : e.values) c += std::log2(1.0 + f * std::max(0.0, w));
      acc[i].add(c / t);
    }
  });
}

PepBound pep_bound(const CMat& heff, double factor) {
  require(factor > 0.0, "pep_bound: factor must be positive");
  const EigenSpectrum s = hermitian_eigenvalues(gram(heff));
  PepBound out;
  out.diversity_order = s.rank();
  out.coding_gain = s.nonzero_product();
  double prod = 1.0;
  for (double w : s.values) prod *= 1.0 + factor * std::max(0.0, w);
  out.bound_value = 1.0 / prod;
  out.asymptotic = 1.0 / (out.coding_gain * std::pow(factor, static_cast<double>(out.diversity_order)));
  return out;
}

double golden_gain_analytic(double e_max, double e_min) {
  constexpr double tau2 = kGoldenTau * kGoldenTau;
  constexpr double mu2 = kGoldenMu * kGoldenMu;
  return linear_to_db((e_max * (1.0 + tau2) + e_min * (1.0 + mu2)) / (2.0 + tau2 + mu2));
}

GoldenMoments golden_moments_mc(const McOptions& opt) {
  require(opt.samples >= 1, "golden_moments_mc: samples must be at least 1");
  const std::uint64_t blocks = block_count(opt.samples);
  std::vector<GoldenMoments> partial(blocks);
  for_each_block(0, blocks, opt.workers, [&](std::size_t b) {
    Rng rng = block_rng(opt.seed, kGoldenStream, b);
    ComplexGaussian cg;
    for (std::uint64_t s = 0; s < block_length(opt.samples, b); ++s) {
      const double e1 = std::norm(cg(rng, opt.sigma2));
      const double e2 = std::norm(cg(rng, opt.sigma2));
      partial[b].e_max += std::max(e1, e2);
      partial[b].e_min += std::min(e1, e2);
    }
  });
  GoldenMoments out;
  for (const auto& p : partial) {
    out.e_max += p.e_max;
    out.e_min += p.e_min;
  }
  out.e_max /= static_cast<double>(opt.samples);
  out.e_min /= static_cast<double>(opt.samples);
  return out;
}

double golden_gain_mc(unsigned receive_count, const McOptions& opt, bool selection) {
  require(receive_count == 1 || receive_count == 2, "golden_gain_mc: 1 or 2 receive antennas");
  require(opt.samples >= 1, "golden_gain_mc: samples must be at least 1");
  constexpr double tau2 = kGoldenTau * kGoldenTau;
  constexpr double mu2 = kGoldenMu * kGoldenMu;
  const std::uint64_t blocks = block_count(opt.samples);
  struct Pair {
    double selected = 0.0;
    double fixed = 0.0;
  };
  std::vector<Pair> partial(blocks);
  for_each_block(0, blocks, opt.workers, [&](std::size_t b) {
    Rng rng = block_rng(opt.seed, kGoldenStream + receive_count, b);
    for (std::uint64_t s = 0; s < block_length(opt.samples, b); ++s) {
      const ChannelRealization ch = sample_channel(2, receive_count, opt.sigma2, rng);
      double e1 = 0.0, e2 = 0.0;
      for (std::size_t r = 0; r < receive_count; ++r) {
        e1 += std::norm(ch.h(r, 0));
        e2 += std::norm(ch.h(r, 1));
      }
      const double s1 = e1 * (1.0 + tau2) + e2 * (1.0 + mu2);
      const double s2 = e2 * (1.0 + tau2) + e1 * (1.0 + mu2);
      partial[b].fixed += s1;
      partial[b].selected += selection ? (e1 >= e2 ? s1 : s2) : s1;
    }
  });
  Pair total;
  for (const auto& p : partial) {
    total.selected += p.selected;
    total.fixed += p.fixed;
  }
  return linear_to_db(total.selected / total.fixed);
}

}  // namespace codediv
