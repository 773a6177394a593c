#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fdrs/protocol.hpp"

namespace fdrs {

/// Nakagami-m link class: the gain |h|^2 is Gamma(m, avg_power / m).
struct LinkSpec {
  double m = 1.0;
  double avg_power = 1.0;  // linear

  double scale() const { return avg_power / m; }
};

/// Per-relay link classes, used only for asymmetric Monte Carlo scenarios.
struct RelayLinks {
  LinkSpec sr;
  LinkSpec rd;
  LinkSpec rr;
  std::optional<LinkSpec> rp;
};

/// A full scenario. Powers and the interference threshold are linear; noise
/// variances are fixed at one. An absent `sd` means no direct link; `sp`,
/// `rp` and `i_th` are either all present (cognitive) or all absent.
struct NetworkConfig {
  int relays = 1;
  double p_s = 1.0;
  double p_r = 1.0;
  double lambda = 1.0;  // RSI scales with p_r^lambda

  LinkSpec sr;
  LinkSpec rd;
  LinkSpec rr;
  std::optional<LinkSpec> sd;
  std::optional<LinkSpec> sp;
  std::optional<LinkSpec> rp;
  std::optional<double> i_th;

  /// Empty, or exactly `relays` entries overriding sr/rd/rr/rp per relay.
  std::vector<RelayLinks> relay_overrides;

  bool has_direct_link() const { return sd.has_value(); }
  bool is_cognitive() const { return sp.has_value() && rp.has_value() && i_th.has_value(); }

  /// Link classes seen by relay k (0-based).
  RelayLinks relay(int k) const;
};

enum class Method { Analytic, MonteCarlo };

/// Every requirement (protocol, method) places on `cfg`, as messages naming
/// the offending field. Empty when the config is usable.
std::vector<std::string> validate_config(const NetworkConfig& cfg, Protocol protocol,
                                         Method method);

/// Structural invariants only (ranges, all-or-none cognitive fields).
std::vector<std::string> validate_structure(const NetworkConfig& cfg);

/// Throws ConfigError listing every violation.
const NetworkConfig& require_valid(const NetworkConfig& cfg, Protocol protocol, Method method);

/// One block-fading draw of every link gain.
struct Realization {
  std::vector<double> g_sr;
  std::vector<double> g_rd;
  std::vector<double> g_rr;
  double g_sd = 0.0;  // 0 when there is no direct link
  std::optional<double> g_sp;
  std::vector<double> g_rp;  // empty when non-cognitive
};

using Rng = std::mt19937_64;

/// Independent generator for substream `index` of `seed`.
Rng substream(std::uint64_t seed, std::uint64_t index);

/// One Gamma(m, theta) variate (exact for every m > 0).
double sample_gamma(double m, double theta, Rng& rng);

Realization sample_realization(const NetworkConfig& cfg, Rng& rng);

/// Same draw order as the returning overload, reusing `out`'s storage.
void sample_realization(const NetworkConfig& cfg, Rng& rng, Realization& out);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace fdrs
