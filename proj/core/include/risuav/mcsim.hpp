// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risuav contributors
//
// Amplitude-level Monte-Carlo oracle for both hops. Results are fully
// determined by (seed, streams, trials); the executing thread count never
// changes a single bit of the output.

#ifndef RISUAV_MCSIM_HPP
#define RISUAV_MCSIM_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "risuav/channel.hpp"
#include "risuav/metrics.hpp"
#include "risuav/snrstats.hpp"

namespace risuav::mcsim {

struct McConfig {
  std::int64_t trials = 1000000;
  std::uint64_t seed = 0x5eed0fbadc0ffee1ull;
  int streams = 1;      // sub-stream partition; part of the result identity
  int batch = 65536;    // generation block size; no effect on results

  void validate() const;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t trials = 0;
};

/// All estimates produced from one paired sample set.
struct McMetrics {
  McEstimate op;
  McEstimate asep;
  McEstimate capacity;
  McEstimate asep_a, asep_b;
  McEstimate capacity_a, capacity_b;
};

/// Fading parameters plus the route attenuation actually applied to it.
struct RisPath {
  channel::RisSpec spec;
  double path_loss = 1.0;
};

/// Everything run_mc needs for one configuration point.
struct McBundle {
  std::vector<RisPath> paths;
  double avg_snr_a = 1.0;
  snrstats::A2gLink link_b;
  double gamma_out = 1.0;
  metrics::Modulation mod;
};

std::uint64_t splitmix64(std::uint64_t& state);

/// Deterministic engine for sub-stream `stream` of a master seed.
std::mt19937_64 make_stream_engine(std::uint64_t seed, std::uint64_t stream);

/// One cascaded amplitude sum: sum over elements of the product of the two
/// Nakagami hop amplitudes.
double sample_amplitude_sum(const channel::RisSpec& spec, std::mt19937_64& rng);

/// n draws of the selected-surface SNR max_k (avg_snr / PL_k) * Z_k^2.
std::vector<double> sample_g2a(std::span<const RisPath> paths, double avg_snr,
                               std::int64_t n, std::mt19937_64& rng);

/// n draws of the Rician hop SNR chi^2 * avg_snr / loss with E[chi^2] = 1.
std::vector<double> sample_a2g(const snrstats::A2gLink& link, std::int64_t n,
                               std::mt19937_64& rng);

/// Estimates outage, combined ASEP and system capacity from paired
/// per-trial SNR samples of the two hops.
McMetrics estimate_metrics(std::span<const double> samples_a,
                           std::span<const double> samples_b, double gamma_out,
                           const metrics::Modulation& mod);

/// Full oracle run: trials split across `streams` independently seeded
/// sub-streams, merged in fixed stream order. `threads` only schedules the
/// work.
McMetrics run_mc(const McBundle& bundle, const McConfig& cfg, int threads = 1);

}  // namespace risuav::mcsim

#endif  // RISUAV_MCSIM_HPP
