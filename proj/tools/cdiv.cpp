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

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "codediv/analysis.hpp"
#include "codediv/errors.hpp"
#include "codediv/harness.hpp"
#include "codediv/parallel.hpp"
#include "codediv/selftest.hpp"

namespace {

using namespace codediv;

struct CommonFlags {
  std::string config;
  std::string out;
  std::vector<std::string> overrides;
  std::uint64_t seed = 1;
  int workers = 0;
  CLI::Option* seed_opt = nullptr;
};

void add_common(CLI::App* app, CommonFlags& f, bool needs_config) {
  auto* c = app->add_option("--config", f.config, "experiment config (JSON)");
  if (needs_config) c->required();
  app->add_option("--out", f.out, "output CSV; a .json sidecar is written next to it");
  app->add_option("--set", f.overrides, "override a config field, key=value (repeatable)");
  f.seed_opt = app->add_option("--seed", f.seed, "random seed (default 1, beats the config value)");
  app->add_option("--workers", f.workers, "OpenMP worker threads (0 = all)");
}

// Config file < --set overrides < --seed.
ExperimentConfig resolve_config(const CommonFlags& f) {
  ExperimentConfig cfg = f.config.empty() ? ExperimentConfig{} : load_config(f.config);
  for (const std::string& o : f.overrides) apply_override(cfg, o);
  if (f.seed_opt->count() > 0 || f.config.empty()) cfg.seed = f.seed;
  validate_config(cfg);
  return cfg;
}

void write_outputs(const CommonFlags& f, const ExperimentConfig& cfg, const std::string& csv,
                   const char* command) {
  if (f.out.empty()) return;
  write_atomic(f.out, csv);
  write_atomic(sidecar_path(f.out), sidecar_json(cfg, command));
}

int cmd_ber(const CommonFlags& f) {
  const ExperimentConfig cfg = resolve_config(f);
  const ExperimentResult r = run_ber(cfg, f.workers);
  const std::string csv = ber_csv(r);
  std::cout << csv;
  write_outputs(f, cfg, csv, "ber");
  return 0;
}

int cmd_capacity(const CommonFlags& f) {
  const ExperimentConfig cfg = resolve_config(f);
  const CapacityRun r = run_capacity(cfg, f.workers);
  const std::string csv = capacity_csv(r);
  std::cout << csv;
  write_outputs(f, cfg, csv, "capacity");
  return 0;
}

int cmd_pep(const CommonFlags& f) {
  const ExperimentConfig cfg = resolve_config(f);
  const CodeSpec code = CodeSpec::from_name(cfg.code, cfg.circulant_order);
  FeedbackConfig fb;
  if (cfg.feedback == "generic") fb.kind = FeedbackConfig::Kind::Generic;
  else if (cfg.feedback == "closed-form") fb.kind = FeedbackConfig::Kind::ClosedForm;
  else if (cfg.feedback == "golden") fb.kind = FeedbackConfig::Kind::Golden;
  else if (cfg.feedback == "circulant") fb.kind = FeedbackConfig::Kind::Circulant;
  else if (cfg.feedback != "none") throw ConfigError("feedback", "pep supports single-user feedback only");
  fb.levels = cfg.k;
  fb.phase_sites = cfg.phase_sites;
  fb.step = cfg.circulant_phase_step == "2pi/K" ? CirculantPhaseStep::FullTurnOverK
                                                : CirculantPhaseStep::HalfTurnOverK;

  // Average of the determinant bound over channel draws, factor Es/(4 M N0).
  std::string csv = "snr_db,mean_bound,min_diversity_order,mean_log10_coding_gain,samples\n";
  Rng rng = block_rng(cfg.seed, 0x9e9, 0);
  std::vector<CMat> heff;
  for (std::uint64_t s = 0; s < cfg.max_frames; ++s) {
    const CMat h = sample_channel(code.antennas(), cfg.receive_antennas, 1.0, rng).h;
    const FeedbackOutcome sel = apply_feedback(code, h, fb);
    heff.push_back(sel.code.induce(sel.h).matrix);
  }
  for (double snr_db : cfg.snr_grid_db) {
    const double factor = db_to_linear(snr_db) / (4.0 * static_cast<double>(code.antennas()));
    double bound = 0.0, log_gain = 0.0;
    std::size_t min_d = SIZE_MAX;
    for (const CMat& m : heff) {
      const PepBound p = pep_bound(m, factor);
      bound += p.bound_value;
      log_gain += std::log10(p.coding_gain);
      min_d = std::min(min_d, p.diversity_order);
    }
    const double n = static_cast<double>(heff.size());
    char line[160];
    std::snprintf(line, sizeof line, "%.10g,%.10g,%zu,%.10g,%zu\n", snr_db, bound / n, min_d, log_gain / n,
                  heff.size());
    csv += line;
  }
  std::cout << csv;
  write_outputs(f, cfg, csv, "pep");
  return 0;
}

int cmd_gain(const std::string& experiment, std::uint64_t samples, std::uint64_t seed, int workers) {
  McOptions opt;
  opt.samples = samples;
  opt.seed = seed;
  opt.workers = workers > 0 ? workers : available_workers();
  const double analytic = golden_gain_analytic();
  if (experiment == "golden-2x1") {
    const GoldenMoments m = golden_moments_mc(opt);
    std::printf("golden 2x1 gain: analytic %.4f dB, monte carlo %.4f dB (%llu samples)\n", analytic,
                golden_gain_mc(1, opt), static_cast<unsigned long long>(samples));
    std::printf("moments: E[h_max^2] = %.4f, E[h_min^2] = %.4f (sigma^2 = 1)\n", m.e_max, m.e_min);
  } else if (experiment == "golden-2x2") {
    std::printf("golden 2x2 gain: monte carlo %.4f dB (%llu samples); 2x1 analytic %.4f dB\n",
                golden_gain_mc(2, opt), static_cast<unsigned long long>(samples), analytic);
  } else {
    throw ConfigError("experiment", "expected golden-2x1 or golden-2x2");
  }
  return 0;
}

int cmd_selftest(std::uint64_t seed) {
  int failed = 0;
  for (const PropertyCheck& c : run_property_suites(seed)) {
    std::printf("%s  %s (%s)\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
    failed += !c.passed;
  }
  return failed == 0 ? 0 : 2;
}

int cmd_list_codes() {
  std::printf("%-12s %3s %3s %3s %6s  %s\n", "name", "M", "T", "L", "rate", "symbols");
  for (const std::string& name : CodeSpec::names()) {
    const CodeSpec c = CodeSpec::from_name(name);
    std::printf("%-12s %3zu %3zu %3zu %6.3f  %s\n", name.c_str(), c.antennas(), c.slots(), c.symbols(), c.rate(),
                c.domain() == SymbolDomain::RealPairs ? "real pairs" : "complex");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cdiv: space-time block codes with code diversity"};
  app.require_subcommand(1);

  CommonFlags ber_f, cap_f, pep_f;
  auto* ber = app.add_subcommand("ber", "Monte Carlo bit error rate over an SNR grid");
  add_common(ber, ber_f, true);
  auto* cap = app.add_subcommand("capacity", "code capacity vs unconstrained capacity");
  add_common(cap, cap_f, true);
  auto* pep = app.add_subcommand("pep", "pairwise error probability bound over channel draws");
  add_common(pep, pep_f, true);

  auto* gain = app.add_subcommand("gain", "Golden code selection gain");
  std::string experiment = "golden-2x1";
  std::uint64_t samples = 1000000, gain_seed = 1;
  int gain_workers = 0;
  gain->add_option("--experiment", experiment, "golden-2x1 or golden-2x2");
  gain->add_option("--samples", samples, "Monte Carlo samples");
  gain->add_option("--seed", gain_seed, "random seed");
  gain->add_option("--workers", gain_workers, "OpenMP worker threads (0 = all)");

  auto* self = app.add_subcommand("selftest", "run the property suites");
  std::uint64_t self_seed = 1;
  self->add_option("--seed", self_seed, "random seed");

  auto* list = app.add_subcommand("list-codes", "print the code catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (ber->parsed()) return cmd_ber(ber_f);
    if (cap->parsed()) return cmd_capacity(cap_f);
    if (pep->parsed()) return cmd_pep(pep_f);
    if (gain->parsed()) return cmd_gain(experiment, samples, gain_seed, gain_workers);
    if (self->parsed()) return cmd_selftest(self_seed);
    if (list->parsed()) return cmd_list_codes();
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error in field '%s': %s\n", e.field().c_str(), e.what());
    return 1;
  } catch (const ContractViolation& e) {
    std::fprintf(stderr, "contract violation: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
