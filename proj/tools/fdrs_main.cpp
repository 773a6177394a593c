// fdrs: outage, throughput and feasibility of full-duplex relay selection.
//
// Exit status: 0 success, 1 configuration or usage error, 2 numerical failure
// or failed validation.

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fdrs/analysis.hpp"
#include "fdrs/analytic.hpp"
#include "fdrs/config.hpp"
#include "fdrs/error.hpp"
#include "fdrs/montecarlo.hpp"
#include "fdrs/report.hpp"

namespace {

using namespace fdrs;
using nlohmann::json;

struct Common {
  std::string config;
  std::vector<std::string> overrides;
  std::string output;
  unsigned workers = 0;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "Scenario file")->required();
  sub->add_option("--set", c.overrides, "Override a config entry, e.g. --set lambda=0");
  sub->add_option("-o,--output", c.output, "Write to a file instead of stdout");
  sub->add_option("--workers", c.workers, "Threads for simulation (0: all cores)");
}

Protocol protocol_arg(const std::string& name) {
  if (auto p = parse_protocol(name)) return *p;
  throw ConfigError({"protocol: unknown protocol '" + name + "'"});
}

std::vector<Protocol> protocol_list(const std::string& list) {
  std::vector<Protocol> out;
  if (list.empty()) return {kFullDuplexProtocols.begin(), kFullDuplexProtocols.end()};
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(protocol_arg(item));
  }
  return out;
}

analysis::MethodChoice method_arg(const std::string& name) {
  if (auto m = analysis::parse_method(name)) return *m;
  throw ConfigError({"method: expected analytic, mc or both, got '" + name + "'"});
}

montecarlo::HdAccounting hd_arg(const std::string& name) {
  if (name == "doubled-rate") return montecarlo::HdAccounting::DoubledRate;
  if (name == "half-throughput") return montecarlo::HdAccounting::HalfThroughput;
  throw ConfigError({"hd-mode: expected doubled-rate or half-throughput, got '" + name + "'"});
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ConfigError({path + ": cannot open output file"});
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct OutageArgs {
  Common common;
  std::string protocol;
  double rate = 0;
  bool cognitive = false;
  std::string method = "analytic";
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 1;
  std::string hd = "doubled-rate";
};

int run_outage(const OutageArgs& a) {
  const NetworkConfig cfg = config::parse_file(a.common.config, a.common.overrides);
  const Protocol p = protocol_arg(a.protocol);
  const auto method = method_arg(a.method);
  const auto hd = hd_arg(a.hd);
  const bool doubled = is_half_duplex(p) && hd == montecarlo::HdAccounting::DoubledRate;

  json out;
  out["manifest"] = report::to_json(report::make_manifest(cfg, "outage", a.seed));
  out["protocol"] = std::string(to_string(p));
  out["rate"] = a.rate;
  out["threshold"] = analytic::outage_threshold(doubled ? 2 * a.rate : a.rate);
  out["cognitive"] = a.cognitive;
  if (method != analysis::MethodChoice::MonteCarlo) {
    const double po = analytic::outage(cfg, p, a.rate, a.cognitive);
    out["analytic"] = {{"outage", po}, {"throughput", analytic::throughput(a.rate, po, p)}};
  }
  if (method != analysis::MethodChoice::Analytic) {
    montecarlo::Options opt;
    opt.cognitive = a.cognitive;
    opt.workers = a.common.workers;
    opt.hd = hd;
    const auto e = montecarlo::estimate_outage(cfg, p, a.rate, a.trials, a.seed, opt);
    json mc = report::to_json(e);
    mc["throughput"] = analytic::throughput(a.rate, e.p_hat, p);
    out["mc"] = mc;
  }
  Output o(a.common.output);
  o.stream() << out.dump(2) << '\n';
  return 0;
}

struct SweepArgs {
  Common common;
  std::string axis;
  double from = 0;
  double to = 0;
  int steps = 11;
  std::string protocols;
  std::string method = "analytic";
  double rate = 2;
  bool cognitive = false;
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 1;
  std::string hd = "doubled-rate";
};

int run_sweep(const SweepArgs& a) {
  const NetworkConfig cfg = config::parse_file(a.common.config, a.common.overrides);
  analysis::SweepSpec spec;
  if (auto axis = analysis::parse_axis(a.axis)) {
    spec.axis = *axis;
  } else {
    throw ConfigError({"axis: expected power_db, rate_bpcu, relay_count or ith_db"});
  }
  spec.from = a.from;
  spec.to = a.to;
  spec.steps = a.steps;
  spec.protocols = protocol_list(a.protocols);
  spec.method = method_arg(a.method);
  spec.rate = a.rate;
  spec.cognitive = a.cognitive;
  spec.trials = a.trials;
  spec.seed = a.seed;
  spec.workers = a.common.workers;
  spec.hd = hd_arg(a.hd);

  const auto result = analysis::run_sweep(spec, cfg);
  Output o(a.common.output);
  report::write_sweep_csv(o.stream(), report::make_manifest(cfg, "sweep", a.seed), result.rows);
  for (const auto& [protocol, messages] : result.errors) {
    for (const auto& m : messages) std::cerr << "error: " << to_string(protocol) << ": " << m << '\n';
  }
  return result.errors.empty() ? 0 : 1;
}

struct PlArgs {
  Common common;
  std::uint64_t trials = 0;
  std::uint64_t seed = 1;
};

int run_pl(const PlArgs& a) {
  const NetworkConfig cfg = config::parse_file(a.common.config, a.common.overrides);
  const auto dist = analytic::feasibility_dist(cfg);
  std::optional<montecarlo::FeasibilityEstimate> est;
  if (a.trials > 0) est = montecarlo::estimate_feasibility(cfg, a.trials, a.seed, a.common.workers);

  json rows = json::array();
  for (std::size_t l = 0; l < dist.p.size(); ++l) {
    json r = {{"L", l}, {"analytic", dist.p[l]}};
    if (est) {
      r["mc"] = est->dist.p[l];
      r["stderr"] = est->std_error[l];
    }
    rows.push_back(r);
  }
  json tilde = {{"analytic", dist.p_tilde0}};
  if (est) {
    tilde["mc"] = est->dist.p_tilde0;
    tilde["stderr"] = est->std_error_tilde0;
  }
  json out;
  out["manifest"] = report::to_json(report::make_manifest(cfg, "pl", a.seed));
  out["k"] = cfg.relays;
  out["rows"] = rows;
  out["p_tilde0"] = tilde;
  if (est) out["trials"] = est->trials;
  Output o(a.common.output);
  o.stream() << out.dump(2) << '\n';
  return 0;
}

struct DiversityArgs {
  Common common;
  std::string protocol;
  double pmin_db = 10;
  double pmax_db = 50;
  int points = 41;
  std::string method = "analytic";
  double rate = 2;
  bool cognitive = false;
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 1;
};

int run_diversity(const DiversityArgs& a) {
  const NetworkConfig cfg = config::parse_file(a.common.config, a.common.overrides);
  const Protocol p = protocol_arg(a.protocol);
  analysis::SweepSpec spec;
  spec.axis = analysis::Axis::PowerDb;
  spec.from = a.pmin_db;
  spec.to = a.pmax_db;
  spec.steps = a.points;
  spec.protocols = {p};
  spec.method = method_arg(a.method);
  spec.rate = a.rate;
  spec.cognitive = a.cognitive;
  spec.trials = a.trials;
  spec.seed = a.seed;
  spec.workers = a.common.workers;
  const auto result = analysis::run_sweep(spec, cfg);
  if (auto it = result.errors.find(p); it != result.errors.end()) throw ConfigError(it->second);

  json fits = json::array();
  for (Method m : {Method::Analytic, Method::MonteCarlo}) {
    std::vector<analysis::PowerPoint> pts;
    json jpts = json::array();
    for (const auto& row : result.rows) {
      if (row.method != m) continue;
      pts.push_back({db_to_linear(row.axis_value), row.outage});
      jpts.push_back({{"p_db", row.axis_value}, {"p_out", row.outage}});
    }
    if (pts.empty()) continue;
    const bool mc = m == Method::MonteCarlo;
    if (mc) {
      std::erase_if(pts, [](const analysis::PowerPoint& q) { return q.p_out <= 0; });
    }
    const auto fit =
        analysis::diversity_fit(pts, mc ? 100.0 / static_cast<double>(a.trials) : 0.0);
    json f = report::to_json(fit);
    f["method"] = mc ? "mc" : "analytic";
    f["points"] = jpts;
    fits.push_back(f);
  }
  json out;
  out["manifest"] = report::to_json(report::make_manifest(cfg, "diversity", a.seed));
  out["protocol"] = std::string(to_string(p));
  out["rate"] = a.rate;
  out["fits"] = fits;
  Output o(a.common.output);
  o.stream() << out.dump(2) << '\n';
  return 0;
}

struct ValidateArgs {
  Common common;
  double rate = 2;
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 1;
  std::string protocols;
  bool cognitive = false;
  bool json_out = false;
};

int run_validate(const ValidateArgs& a) {
  const NetworkConfig cfg = config::parse_file(a.common.config, a.common.overrides);
  const auto report = analysis::validate_report(cfg, protocol_list(a.protocols), a.rate,
                                                a.trials, a.seed, a.cognitive, a.common.workers);
  Output o(a.common.output);
  if (a.json_out) {
    json rows = json::array();
    for (const auto& r : report.rows) rows.push_back(report::to_json(r));
    json out = {{"manifest", report::to_json(report::make_manifest(cfg, "validate", a.seed))},
                {"rate", a.rate},
                {"rows", rows},
                {"pass", report.all_pass()}};
    o.stream() << out.dump(2) << '\n';
  } else {
    for (const auto& r : report.rows) {
      o.stream() << (r.pass ? "PASS " : "FAIL ") << to_string(r.protocol)
                 << " p_analytic=" << config::format_number(r.p_analytic)
                 << " p_hat=" << config::format_number(r.p_hat)
                 << " stderr=" << config::format_number(r.std_error)
                 << " z=" << config::format_number(r.z) << '\n';
    }
    o.stream() << (report.all_pass() ? "PASS" : "FAIL") << " overall\n";
  }
  return report.all_pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Outage analysis of full-duplex relay selection under Nakagami-m fading"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(report::kVersion));

  OutageArgs oa;
  auto* outage = app.add_subcommand("outage", "Outage probability and throughput at one rate");
  add_common(outage, oa.common);
  outage->add_option("--protocol", oa.protocol, "NDL, IDL, IDL/DT, SDF, HD-MRC or HD-SDF")
      ->required();
  outage->add_option("--rate", oa.rate, "Source rate in bits per channel use")
      ->required()
      ->check(CLI::PositiveNumber);
  outage->add_flag("--cognitive", oa.cognitive, "Apply the interference constraint");
  outage->add_option("--method", oa.method, "analytic, mc or both");
  outage->add_option("--trials", oa.trials, "Monte Carlo trials");
  outage->add_option("--seed", oa.seed, "Monte Carlo seed");
  outage->add_option("--hd-mode", oa.hd, "doubled-rate or half-throughput");

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "CSV sweep over one parameter");
  add_common(sweep, sa.common);
  sweep->add_option("--axis", sa.axis, "power_db, rate_bpcu, relay_count or ith_db")->required();
  sweep->add_option("--from", sa.from)->required();
  sweep->add_option("--to", sa.to)->required();
  sweep->add_option("--steps", sa.steps, "Grid points (relay_count steps by one)");
  sweep->add_option("--protocols", sa.protocols, "Comma-separated list (default: all FD)");
  sweep->add_option("--method", sa.method, "analytic, mc or both");
  sweep->add_option("--rate", sa.rate, "Rate for non-rate axes");
  sweep->add_flag("--cognitive", sa.cognitive, "Apply the interference constraint");
  sweep->add_option("--trials", sa.trials, "Monte Carlo trials per cell");
  sweep->add_option("--seed", sa.seed, "Monte Carlo seed");
  sweep->add_option("--hd-mode", sa.hd, "doubled-rate or half-throughput");

  PlArgs pa;
  auto* pl = app.add_subcommand("pl", "Distribution of the number of feasible relays");
  add_common(pl, pa.common);
  pl->add_option("--trials", pa.trials, "Monte Carlo trials (0: analytic only)");
  pl->add_option("--seed", pa.seed, "Monte Carlo seed");

  DiversityArgs da;
  auto* diversity = app.add_subcommand("diversity", "High-power outage slope");
  add_common(diversity, da.common);
  diversity->add_option("--protocol", da.protocol)->required();
  diversity->add_option("--pmin-db", da.pmin_db);
  diversity->add_option("--pmax-db", da.pmax_db);
  diversity->add_option("--points", da.points);
  diversity->add_option("--method", da.method, "analytic, mc or both");
  diversity->add_option("--rate", da.rate);
  diversity->add_flag("--cognitive", da.cognitive);
  diversity->add_option("--trials", da.trials);
  diversity->add_option("--seed", da.seed);

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Compare analytic outage with simulation");
  add_common(validate, va.common);
  validate->add_option("--rate", va.rate)->check(CLI::PositiveNumber);
  validate->add_option("--trials", va.trials);
  validate->add_option("--seed", va.seed);
  validate->add_option("--protocols", va.protocols, "Comma-separated list (default: all FD)");
  validate->add_flag("--cognitive", va.cognitive);
  validate->add_flag("--json", va.json_out, "Emit a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*outage) return run_outage(oa);
    if (*sweep) return run_sweep(sa);
    if (*pl) return run_pl(pa);
    if (*diversity) return run_diversity(da);
    if (*validate) return run_validate(va);
  } catch (const ConfigError& e) {
    for (const auto& v : e.violations()) std::cerr << "error: " << v << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
