// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risuav contributors

#include <benchmark/benchmark.h>

#include <cmath>

#include "risuav/specfun.hpp"

using namespace risuav::specfun;

static void BM_RegLowerGamma(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reg_lower_gamma(8.05, x));
    x += 0.01;
    if (x > 30.0) x = 0.1;
  }
}
BENCHMARK(BM_RegLowerGamma);

static void BM_MarcumQ1(benchmark::State& state) {
  const double a = std::sqrt(6.0);
  double b = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(marcum_q1(a, b));
    b += 0.01;
    if (b > 12.0) b = 0.1;
  }
}
BENCHMARK(BM_MarcumQ1);

static void BM_BesselI0Scaled(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_i0_scaled(x));
    x += 0.37;
    if (x > 200.0) x = 0.0;
  }
}
BENCHMARK(BM_BesselI0Scaled);

static void BM_HumbertPhi1(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(humbert_phi1(0.5, 1.0, 1.0, 0.4, 1.7));
  }
}
BENCHMARK(BM_HumbertPhi1);

static void BM_Hyp2f1Ratio(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(hyp2f1_ratio(2.5, 10.0));
  }
}
BENCHMARK(BM_Hyp2f1Ratio);

BENCHMARK_MAIN();
