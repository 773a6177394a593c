#pragma once

// Parameter sweeps, analytic-vs-simulation validation and diversity-order
// fitting.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fdrs/channel.hpp"
#include "fdrs/montecarlo.hpp"
#include "fdrs/protocol.hpp"

namespace fdrs::analysis {

enum class Axis { PowerDb, RateBpcu, RelayCount, IthDb };

enum class MethodChoice { Analytic, MonteCarlo, Both };

std::string_view to_string(Axis axis);
std::optional<Axis> parse_axis(std::string_view name);
std::string_view to_string(MethodChoice m);
std::optional<MethodChoice> parse_method(std::string_view name);

struct SweepSpec {
  Axis axis = Axis::PowerDb;
  double from = 0.0;
  double to = 1.0;
  int steps = 2;  // ignored for RelayCount, which steps by one
  std::vector<Protocol> protocols;
  MethodChoice method = MethodChoice::Analytic;
  double rate = 2.0;  // used unless the axis is the rate
  bool cognitive = false;
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 1;
  unsigned workers = 0;  // 0: hardware concurrency
  montecarlo::HdAccounting hd = montecarlo::HdAccounting::DoubledRate;
};

/// Problems with the spec itself (not with any protocol).
std::vector<std::string> validate_spec(const SweepSpec& spec);

/// Axis values in sweep order.
std::vector<double> axis_values(const SweepSpec& spec);

/// `cfg` with the axis parameter set to `value`.
NetworkConfig apply_axis(const NetworkConfig& cfg, Axis axis, double value);

struct SweepRow {
  double axis_value = 0.0;
  Protocol protocol = Protocol::MHDF_NDL;
  Method method = Method::Analytic;
  double outage = 0.0;
  double throughput = 0.0;
  std::optional<double> std_error;  // Monte Carlo rows only
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // axis value, then protocol, then method
  std::map<Protocol, std::vector<std::string>> errors;
};

/// Evaluates every (axis value, protocol, method) cell. A protocol whose
/// cells fail validation contributes its messages to `errors` and no rows;
/// the remaining protocols are still evaluated. Throws ConfigError only for
/// an invalid spec.
SweepResult run_sweep(const SweepSpec& spec, const NetworkConfig& cfg);

struct PowerPoint {
  double power = 0.0;  // linear
  double p_out = 0.0;
};

struct DiversityFit {
  double slope = 0.0;
  double std_error = 0.0;
  int points_used = 0;
  bool floor_detected = false;
};

/// Least-squares slope of -log10 P_out against log10 P over the largest
/// trailing window of at least four points with R^2 >= 0.999 (the last four
/// points if none qualifies). A floor is reported when the slope over the last
/// four points is below 0.1. Points with P_out < min_p_out are dropped first.
DiversityFit diversity_fit(const std::vector<PowerPoint>& points, double min_p_out = 0.0);

struct ValidationRow {
  Protocol protocol = Protocol::MHDF_NDL;
  double p_analytic = 0.0;
  double p_hat = 0.0;
  double std_error = 0.0;
  double z = 0.0;
  bool pass = false;
};

/// PASS iff |z| <= 3 or |p_hat - p_analytic| <= 1e-3.
ValidationRow compare(Protocol protocol, double p_analytic, const montecarlo::OutageEstimate& e);

struct ValidationReport {
  std::vector<ValidationRow> rows;
  bool all_pass() const;
};

ValidationReport validate_report(const NetworkConfig& cfg, const std::vector<Protocol>& protocols,
                                 double rate, std::uint64_t trials, std::uint64_t seed,
                                 bool cognitive = false, unsigned workers = 0);

}  // namespace fdrs::analysis
