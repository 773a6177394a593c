#include "fdrs/report.hpp"

#include <chrono>
#include <ctime>

#include "fdrs/config.hpp"

namespace fdrs::report {

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

RunManifest make_manifest(const NetworkConfig& cfg, std::string subcommand, std::uint64_t seed) {
  RunManifest m;
  m.config_digest = config::digest(cfg);
  m.seed = seed;
  m.subcommand = std::move(subcommand);
  m.timestamp = utc_now();
  return m;
}

nlohmann::json to_json(const RunManifest& m) {
  return {{"config_digest", m.config_digest},
          {"version", m.version},
          {"seed", m.seed},
          {"subcommand", m.subcommand},
          {"timestamp", m.timestamp}};
}

nlohmann::json to_json(const montecarlo::OutageEstimate& e) {
  return {{"p_hat", e.p_hat}, {"stderr", e.std_error}, {"trials", e.trials}, {"seed", e.seed}};
}

nlohmann::json to_json(const analysis::DiversityFit& fit) {
  return {{"slope", fit.slope},
          {"stderr", fit.std_error},
          {"points_used", fit.points_used},
          {"floor_detected", fit.floor_detected}};
}

nlohmann::json to_json(const analysis::ValidationRow& row) {
  return {{"protocol", std::string(to_string(row.protocol))},
          {"p_analytic", row.p_analytic},
          {"p_hat", row.p_hat},
          {"stderr", row.std_error},
          {"z", std::isfinite(row.z) ? nlohmann::json(row.z) : nlohmann::json(nullptr)},
          {"pass", row.pass}};
}

std::string csv_row(const analysis::SweepRow& row) {
  const bool mc = row.method == Method::MonteCarlo;
  std::string out;
  out += config::format_number(row.axis_value);
  out += ',';
  out += to_string(row.protocol);
  out += ',';
  out += mc ? "mc" : "analytic";
  out += ',';
  out += config::format_number(row.outage);
  out += ',';
  out += config::format_number(row.throughput);
  out += ',';
  if (row.std_error) out += config::format_number(*row.std_error);
  out += ',';
  if (mc) out += std::to_string(row.trials);
  out += ',';
  if (mc) out += std::to_string(row.seed);
  return out;
}

void write_sweep_csv(std::ostream& out, const RunManifest& manifest,
                     const std::vector<analysis::SweepRow>& rows) {
  out << "# manifest " << to_json(manifest).dump() << '\n' << kCsvHeader << '\n';
  for (const auto& row : rows) out << csv_row(row) << '\n';
}

}  // namespace fdrs::report
