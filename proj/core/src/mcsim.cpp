// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risuav contributors

#include "risuav/mcsim.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "risuav/common.hpp"
#include "risuav/errors.hpp"
#include "risuav/specfun.hpp"

namespace risuav::mcsim {

void McConfig::validate() const {
  if (trials < 1) throw domain_error("McConfig: trials must be >= 1");
  if (streams < 1) throw domain_error("McConfig: streams must be >= 1");
  if (batch < 1) throw domain_error("McConfig: batch must be >= 1");
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::mt19937_64 make_stream_engine(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed ^ (0x9e3779b97f4a7c15ull * (stream + 1));
  const std::uint64_t w0 = splitmix64(state);
  const std::uint64_t w1 = splitmix64(state);
  const std::uint64_t w2 = splitmix64(state);
  const std::uint64_t w3 = splitmix64(state);
  std::seed_seq seq{static_cast<std::uint32_t>(w0), static_cast<std::uint32_t>(w0 >> 32),
                    static_cast<std::uint32_t>(w1), static_cast<std::uint32_t>(w1 >> 32),
                    static_cast<std::uint32_t>(w2), static_cast<std::uint32_t>(w2 >> 32),
                    static_cast<std::uint32_t>(w3), static_cast<std::uint32_t>(w3 >> 32)};
  return std::mt19937_64(seq);
}

double sample_amplitude_sum(const channel::RisSpec& spec, std::mt19937_64& rng) {
  std::gamma_distribution<double> hop1(spec.m1, spec.omega1 / spec.m1);
  std::gamma_distribution<double> hop2(spec.m2, spec.omega2 / spec.m2);
  double z = 0.0;
  for (int i = 0; i < spec.n_elements; ++i) {
    z += std::sqrt(hop1(rng)) * std::sqrt(hop2(rng));
  }
  return z;
}

std::vector<double> sample_g2a(std::span<const RisPath> paths, double avg_snr,
                               std::int64_t n, std::mt19937_64& rng) {
  if (paths.empty()) throw domain_error("sample_g2a: at least one surface required");
  if (!(avg_snr > 0.0)) throw domain_error("sample_g2a: average SNR must be positive");
  for (const auto& p : paths) {
    p.spec.validate();
    if (!(p.path_loss > 0.0)) throw domain_error("sample_g2a: path loss must be positive");
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    double best = 0.0;
    for (const auto& p : paths) {
      const double z = sample_amplitude_sum(p.spec, rng);
      best = std::max(best, avg_snr / p.path_loss * z * z);
    }
    out.push_back(best);
  }
  return out;
}

std::vector<double> sample_a2g(const snrstats::A2gLink& link, std::int64_t n,
                               std::mt19937_64& rng) {
  link.validate();
  const double nu = std::sqrt(link.k0 / (1.0 + link.k0));
  const double sigma = std::sqrt(0.5 / (1.0 + link.k0));
  const double scale = link.avg_snr / link.loss;
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const double re = nu + sigma * normal(rng);
    const double im = sigma * normal(rng);
    out.push_back((re * re + im * im) * scale);
  }
  return out;
}

namespace {

// Raw per-trial sums; merged across sub-streams in fixed order.
struct Accumulator {
  std::int64_t n = 0;
  double outage_count = 0.0;
  double qa = 0.0, qa2 = 0.0;
  double qb = 0.0, qb2 = 0.0;
  double la = 0.0, la2 = 0.0;
  double lb = 0.0, lb2 = 0.0;

  void add(double ga, double gb, double gamma_out, const metrics::Modulation& mod) {
    ++n;
    if (std::min(ga, gb) < gamma_out) outage_count += 1.0;
    const double ea = mod.p * specfun::gaussian_q(std::sqrt(2.0 * mod.q * ga));
    const double eb = mod.p * specfun::gaussian_q(std::sqrt(2.0 * mod.q * gb));
    qa += ea;
    qa2 += ea * ea;
    qb += eb;
    qb2 += eb * eb;
    const double ca = std::log2(1.0 + ga);
    const double cb = std::log2(1.0 + gb);
    la += ca;
    la2 += ca * ca;
    lb += cb;
    lb2 += cb * cb;
  }

  void merge(const Accumulator& o) {
    n += o.n;
    outage_count += o.outage_count;
    qa += o.qa;
    qa2 += o.qa2;
    qb += o.qb;
    qb2 += o.qb2;
    la += o.la;
    la2 += o.la2;
    lb += o.lb;
    lb2 += o.lb2;
  }

  static McEstimate mean_of(double s, double s2, std::int64_t n) {
    McEstimate e;
    e.trials = n;
    e.mean = s / n;
    const double var = std::max(0.0, s2 / n - e.mean * e.mean);
    e.std_error = std::sqrt(var / n);
    return e;
  }

  McMetrics finalize() const {
    McMetrics m;
    m.op.trials = n;
    m.op.mean = outage_count / n;
    m.op.std_error = std::sqrt(std::max(0.0, m.op.mean * (1.0 - m.op.mean)) / n);

    m.asep_a = mean_of(qa, qa2, n);
    m.asep_b = mean_of(qb, qb2, n);
    m.asep.trials = n;
    m.asep.mean = metrics::asep_total(clamp_probability(m.asep_a.mean),
                                      clamp_probability(m.asep_b.mean));
    // first-order error propagation through pa + pb - 2 pa pb
    const double da = 1.0 - 2.0 * m.asep_b.mean;
    const double db = 1.0 - 2.0 * m.asep_a.mean;
    m.asep.std_error = std::hypot(da * m.asep_a.std_error, db * m.asep_b.std_error);

    m.capacity_a = mean_of(la, la2, n);
    m.capacity_b = mean_of(lb, lb2, n);
    m.capacity.trials = n;
    m.capacity.mean = 0.5 * std::min(m.capacity_a.mean, m.capacity_b.mean);
    m.capacity.std_error = 0.5 * (m.capacity_a.mean <= m.capacity_b.mean
                                      ? m.capacity_a.std_error
                                      : m.capacity_b.std_error);
    return m;
  }
};

}  // namespace

McMetrics estimate_metrics(std::span<const double> samples_a,
                           std::span<const double> samples_b, double gamma_out,
                           const metrics::Modulation& mod) {
  if (samples_a.empty() || samples_a.size() != samples_b.size())
    throw domain_error("estimate_metrics: paired non-empty sample lists required");
  if (!(gamma_out > 0.0)) throw domain_error("estimate_metrics: threshold must be positive");
  Accumulator acc;
  for (std::size_t i = 0; i < samples_a.size(); ++i)
    acc.add(samples_a[i], samples_b[i], gamma_out, mod);
  return acc.finalize();
}

McMetrics run_mc(const McBundle& bundle, const McConfig& cfg, int threads) {
  cfg.validate();
  if (bundle.paths.empty()) throw domain_error("run_mc: at least one surface required");
  bundle.link_b.validate();
  if (!(bundle.gamma_out > 0.0)) throw domain_error("run_mc: threshold must be positive");

  const int streams = cfg.streams;
  std::vector<Accumulator> parts(streams);

  auto run_stream = [&](int s) {
    const std::int64_t base = cfg.trials / streams;
    const std::int64_t extra = s < static_cast<int>(cfg.trials % streams) ? 1 : 0;
    std::int64_t todo = base + extra;
    auto rng = make_stream_engine(cfg.seed, static_cast<std::uint64_t>(s));
    Accumulator& acc = parts[s];
    while (todo > 0) {
      const std::int64_t chunk = std::min<std::int64_t>(todo, cfg.batch);
      auto ga = sample_g2a(bundle.paths, bundle.avg_snr_a, chunk, rng);
      auto gb = sample_a2g(bundle.link_b, chunk, rng);
      for (std::int64_t i = 0; i < chunk; ++i)
        acc.add(ga[static_cast<std::size_t>(i)], gb[static_cast<std::size_t>(i)],
                bundle.gamma_out, bundle.mod);
      todo -= chunk;
    }
  };

  if (threads <= 1 || streams == 1) {
    for (int s = 0; s < streams; ++s) run_stream(s);
  } else {
    std::vector<std::thread> pool;
    const int workers = std::min(threads, streams);
    // static round-robin assignment keeps scheduling irrelevant to results
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        for (int s = w; s < streams; s += workers) run_stream(s);
      });
    }
    for (auto& th : pool) th.join();
  }

  Accumulator total;
  for (const auto& p : parts) total.merge(p);
  return total.finalize();
}

}  // namespace risuav::mcsim
