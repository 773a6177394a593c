#pragma once

// Result emission: run manifests, sweep CSV and JSON records.

#include <cstdint>
#include <ostream>
#include <string>

#include <json.hpp>

#include "fdrs/analysis.hpp"
#include "fdrs/analytic.hpp"
#include "fdrs/montecarlo.hpp"

namespace fdrs::report {

inline constexpr std::string_view kVersion = "0.1.0";

struct RunManifest {
  std::string config_digest;
  std::string version{kVersion};
  std::uint64_t seed = 0;
  std::string subcommand;
  std::string timestamp;  // UTC, ISO 8601
};

RunManifest make_manifest(const NetworkConfig& cfg, std::string subcommand, std::uint64_t seed);

nlohmann::json to_json(const RunManifest& m);
nlohmann::json to_json(const montecarlo::OutageEstimate& e);
nlohmann::json to_json(const analysis::DiversityFit& fit);
nlohmann::json to_json(const analysis::ValidationRow& row);

/// Column order of sweep CSV files.
inline constexpr std::string_view kCsvHeader =
    "axis,protocol,method,outage,throughput,stderr,trials,seed";

/// `# manifest {...}` line, header, then one line per row. Numbers use the
/// shortest round-trip form; analytic rows leave stderr, trials and seed empty.
void write_sweep_csv(std::ostream& out, const RunManifest& manifest,
                     const std::vector<analysis::SweepRow>& rows);

std::string csv_row(const analysis::SweepRow& row);

}  // namespace fdrs::report
