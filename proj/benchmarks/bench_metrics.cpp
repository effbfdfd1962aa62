// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risuav contributors

#include <benchmark/benchmark.h>

#include "risuav/channel.hpp"
#include "risuav/common.hpp"
#include "risuav/mcsim.hpp"
#include "risuav/metrics.hpp"

using namespace risuav;

namespace {

snrstats::G2aLink make_link(int surfaces, int n, double snr_db) {
  channel::RisSpec rs;
  rs.n_elements = n;
  snrstats::G2aLink link;
  for (int k = 0; k < surfaces; ++k)
    link.fits.push_back(channel::gamma_fit_with_path_loss(rs, 1.0));
  link.avg_snr = db_to_linear(snr_db);
  return link;
}

}  // namespace

static void BM_OutageExact(benchmark::State& state) {
  auto la = make_link(3, 15, 20.0);
  snrstats::A2gLink lb{3.0, 1.0, db_to_linear(20.0)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(metrics::outage_total(snrstats::g2a_cdf(la, 1.0),
                                                   snrstats::a2g_cdf(lb, 1.0)));
  }
}
BENCHMARK(BM_OutageExact);

static void BM_AsepHopA(benchmark::State& state) {
  auto la = make_link(static_cast<int>(state.range(0)), 5, 10.0);
  const auto mod = metrics::Modulation::bpsk();
  for (auto _ : state) {
    benchmark::DoNotOptimize(metrics::asep_hop_a(la, mod));
  }
}
BENCHMARK(BM_AsepHopA)->Arg(1)->Arg(3);

static void BM_AsepHopB(benchmark::State& state) {
  snrstats::A2gLink lb{3.0, 1.0, db_to_linear(15.0)};
  const auto mod = metrics::Modulation::bpsk();
  for (auto _ : state) {
    benchmark::DoNotOptimize(metrics::asep_hop_b(lb, mod));
  }
}
BENCHMARK(BM_AsepHopB);

static void BM_CapacityHopA(benchmark::State& state) {
  auto la = make_link(3, 15, 20.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(metrics::capacity_hop_a(la));
  }
}
BENCHMARK(BM_CapacityHopA);

static void BM_McSampleG2a(benchmark::State& state) {
  channel::RisSpec rs;
  rs.n_elements = static_cast<int>(state.range(0));
  std::vector<mcsim::RisPath> paths(3, {rs, 1.0});
  auto rng = mcsim::make_stream_engine(1, 0);
  for (auto _ : state) {
    auto v = mcsim::sample_g2a(paths, 100.0, 1024, rng);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_McSampleG2a)->Arg(5)->Arg(15);

BENCHMARK_MAIN();
