#pragma once

// Direct simulation of every protocol, including the half-duplex baselines,
// and of the relay feasibility process.

#include <cstdint>

#include "fdrs/analytic.hpp"
#include "fdrs/channel.hpp"
#include "fdrs/protocol.hpp"

namespace fdrs::montecarlo {

/// Trials per substream. Results depend on (seed, trials) only.
inline constexpr std::uint64_t kChunkSize = 65536;

struct OutageEstimate {
  double p_hat = 0.0;
  double std_error = 0.0;  // sqrt(p_hat (1 - p_hat) / trials)
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Which relays may be selected in a realization, and whether the source may
/// transmit on its own. Default: everything allowed.
struct Eligibility {
  const std::vector<char>* relay_ok = nullptr;  // nullptr: all relays
  bool direct_ok = true;
};

/// How half-duplex outage is compared with full duplex at source rate R.
enum class HdAccounting {
  DoubledRate,     // threshold 2^{2R} - 1
  HalfThroughput,  // threshold 2^R - 1; throughput carries the factor 1/2
};

/// End-to-end SINR of the selected relay (or direct branch) for one
/// realization. SDF and the HD baselines combine relayed and direct signals
/// as P_R g_kD + P_S g_SD.
double e2e_sinr(const Realization& r, const NetworkConfig& cfg, Protocol protocol,
                const Eligibility& eligibility = {});

struct Options {
  bool cognitive = false;
  unsigned workers = 1;  // 0: hardware concurrency
  HdAccounting hd = HdAccounting::DoubledRate;
};

/// Outage frequency at rate R over `trials` independent realizations.
OutageEstimate estimate_outage(const NetworkConfig& cfg, Protocol protocol, double rate,
                               std::uint64_t trials, std::uint64_t seed, const Options& options = {});

/// Outage frequency at an explicit SINR threshold.
OutageEstimate estimate_outage_at(const NetworkConfig& cfg, Protocol protocol, double threshold,
                                  std::uint64_t trials, std::uint64_t seed,
                                  const Options& options = {});

/// One estimate per threshold, all from the same realizations.
std::vector<OutageEstimate> estimate_outage_curve(const NetworkConfig& cfg, Protocol protocol,
                                                  const std::vector<double>& thresholds,
                                                  std::uint64_t trials, std::uint64_t seed,
                                                  const Options& options = {});

struct FeasibilityEstimate {
  analytic::FeasibilityDist dist;
  std::vector<double> std_error;  // per p[L]
  double std_error_tilde0 = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Empirical distribution of the number of relays with P_S g_SP + P_R g_kP <= I_th.
FeasibilityEstimate estimate_feasibility(const NetworkConfig& cfg, std::uint64_t trials,
                                         std::uint64_t seed, unsigned workers = 1);

}  // namespace fdrs::montecarlo
