#include "fdrs/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "fdrs/error.hpp"

namespace fdrs::montecarlo {

namespace {

unsigned resolve_workers(unsigned workers) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  return workers;
}

// Runs body(chunk_index, chunk_trials) for every chunk, each chunk exactly
// once, on `workers` threads.
template <class Body>
void for_each_chunk(std::uint64_t trials, unsigned workers, Body&& body) {
  const std::uint64_t chunks = (trials + kChunkSize - 1) / kChunkSize;
  auto trials_in = [&](std::uint64_t c) {
    return std::min(kChunkSize, trials - c * kChunkSize);
  };
  workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(workers), chunks));
  if (workers <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) body(c, trials_in(c));
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::uint64_t c = next++; c < chunks; c = next++) body(c, trials_in(c));
    });
  }
  for (auto& t : pool) t.join();
}

OutageEstimate make_estimate(std::uint64_t count, std::uint64_t trials, std::uint64_t seed) {
  OutageEstimate e;
  e.trials = trials;
  e.seed = seed;
  e.p_hat = static_cast<double>(count) / static_cast<double>(trials);
  e.std_error = std::sqrt(e.p_hat * (1 - e.p_hat) / static_cast<double>(trials));
  return e;
}

void check_trials(std::uint64_t trials) {
  if (trials < 1) throw DomainError("monte carlo: trials must be >= 1");
}

// Feasible relays and direct-transmission permission for one realization.
// Full-duplex nodes transmit simultaneously, so the primary sees the sum of
// source and relay interference; half-duplex nodes are checked per slot.
void gate(const Realization& r, const NetworkConfig& cfg, Protocol protocol,
          std::vector<char>& relay_ok, bool& direct_ok) {
  const double ith = *cfg.i_th;
  const double source = cfg.p_s * *r.g_sp;
  direct_ok = source <= ith;
  relay_ok.resize(r.g_rp.size());
  const bool hd = is_half_duplex(protocol);
  for (std::size_t k = 0; k < r.g_rp.size(); ++k) {
    const double relay = cfg.p_r * r.g_rp[k];
    relay_ok[k] = hd ? (direct_ok && relay <= ith) : (source + relay <= ith);
  }
}

}  // namespace

double e2e_sinr(const Realization& r, const NetworkConfig& cfg, Protocol protocol,
                const Eligibility& eligibility) {
  const bool hd = is_half_duplex(protocol);
  const double direct = cfg.p_s * r.g_sd;
  const double rsi_gain = std::pow(cfg.p_r, cfg.lambda);
  double best = 0.0;
  for (std::size_t k = 0; k < r.g_sr.size(); ++k) {
    if (eligibility.relay_ok && !(*eligibility.relay_ok)[k]) continue;
    const double hop1 =
        hd ? cfg.p_s * r.g_sr[k] : cfg.p_s * r.g_sr[k] / (rsi_gain * r.g_rr[k] + 1);
    const double relayed = cfg.p_r * r.g_rd[k];
    double hop2 = relayed;
    switch (protocol) {
      case Protocol::MHDF_NDL:
        break;
      case Protocol::MHDF_IDL:
      case Protocol::MHDF_IDL_DT:
        hop2 = relayed / (direct + 1);
        break;
      case Protocol::SDF:
      case Protocol::HD_MRC:
      case Protocol::HD_SDF:
        hop2 = relayed + direct;
        break;
    }
    best = std::max(best, std::min(hop1, hop2));
  }
  if (allows_direct_transmission(protocol) && eligibility.direct_ok) {
    best = std::max(best, direct);
  }
  return best;
}

std::vector<OutageEstimate> estimate_outage_curve(const NetworkConfig& cfg, Protocol protocol,
                                                  const std::vector<double>& thresholds,
                                                  std::uint64_t trials, std::uint64_t seed,
                                                  const Options& options) {
  check_trials(trials);
  require_valid(cfg, protocol, Method::MonteCarlo);
  if (options.cognitive && !cfg.is_cognitive()) {
    throw ConfigError({"ith: cognitive simulation requires sp, rp and ith"});
  }
  const std::size_t n = thresholds.size();
  const std::uint64_t chunks = (trials + kChunkSize - 1) / kChunkSize;
  std::vector<std::uint64_t> counts(chunks * n, 0);

  for_each_chunk(trials, options.workers, [&](std::uint64_t chunk, std::uint64_t count) {
    Rng rng = substream(seed, chunk);
    Realization r;
    std::vector<char> relay_ok;
    Eligibility el;
    std::uint64_t* out = counts.data() + chunk * n;
    for (std::uint64_t t = 0; t < count; ++t) {
      sample_realization(cfg, rng, r);
      if (options.cognitive) {
        gate(r, cfg, protocol, relay_ok, el.direct_ok);
        el.relay_ok = &relay_ok;
      }
      const double sinr = e2e_sinr(r, cfg, protocol, el);
      for (std::size_t i = 0; i < n; ++i) {
        if (sinr < thresholds[i]) ++out[i];
      }
    }
  });

  std::vector<OutageEstimate> result;
  result.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t total = 0;
    for (std::uint64_t c = 0; c < chunks; ++c) total += counts[c * n + i];
    result.push_back(make_estimate(total, trials, seed));
  }
  return result;
}

OutageEstimate estimate_outage_at(const NetworkConfig& cfg, Protocol protocol, double threshold,
                                  std::uint64_t trials, std::uint64_t seed,
                                  const Options& options) {
  return estimate_outage_curve(cfg, protocol, {threshold}, trials, seed, options).front();
}

OutageEstimate estimate_outage(const NetworkConfig& cfg, Protocol protocol, double rate,
                               std::uint64_t trials, std::uint64_t seed, const Options& options) {
  if (!(rate >= 0)) throw DomainError("estimate_outage: rate must be >= 0");
  const bool doubled = is_half_duplex(protocol) && options.hd == HdAccounting::DoubledRate;
  const double threshold = analytic::outage_threshold(doubled ? 2 * rate : rate);
  return estimate_outage_at(cfg, protocol, threshold, trials, seed, options);
}

FeasibilityEstimate estimate_feasibility(const NetworkConfig& cfg, std::uint64_t trials,
                                         std::uint64_t seed, unsigned workers) {
  check_trials(trials);
  if (!cfg.is_cognitive()) {
    throw ConfigError({"ith: feasibility simulation requires sp, rp and ith"});
  }
  auto violations = validate_structure(cfg);
  if (!violations.empty()) throw ConfigError(std::move(violations));

  const std::size_t slots = static_cast<std::size_t>(cfg.relays) + 2;  // p[0..K], tilde0
  const std::uint64_t chunks = (trials + kChunkSize - 1) / kChunkSize;
  std::vector<std::uint64_t> counts(chunks * slots, 0);

  for_each_chunk(trials, workers, [&](std::uint64_t chunk, std::uint64_t count) {
    Rng rng = substream(seed, chunk);
    Realization r;
    std::vector<char> relay_ok;
    bool direct_ok = false;
    std::uint64_t* out = counts.data() + chunk * slots;
    for (std::uint64_t t = 0; t < count; ++t) {
      sample_realization(cfg, rng, r);
      gate(r, cfg, Protocol::MHDF_NDL, relay_ok, direct_ok);
      const auto feasible = static_cast<std::size_t>(std::count(relay_ok.begin(), relay_ok.end(), 1));
      ++out[feasible];
      if (feasible == 0 && direct_ok) ++out[slots - 1];
    }
  });

  FeasibilityEstimate est;
  est.trials = trials;
  est.seed = seed;
  est.dist.p.assign(slots - 1, 0.0);
  est.std_error.assign(slots - 1, 0.0);
  for (std::size_t i = 0; i < slots; ++i) {
    std::uint64_t total = 0;
    for (std::uint64_t c = 0; c < chunks; ++c) total += counts[c * slots + i];
    const OutageEstimate e = make_estimate(total, trials, seed);
    if (i + 1 < slots) {
      est.dist.p[i] = e.p_hat;
      est.std_error[i] = e.std_error;
    } else {
      est.dist.p_tilde0 = e.p_hat;
      est.std_error_tilde0 = e.std_error;
    }
  }
  return est;
}

}  // namespace fdrs::montecarlo
