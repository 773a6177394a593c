#include "fdrs/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <thread>

#include "fdrs/analytic.hpp"
#include "fdrs/error.hpp"

namespace fdrs::analysis {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

struct Cell {
  std::size_t point;
  std::size_t protocol;
  Method method;
};

struct Line {
  double slope;
  double intercept;
  double r2;
  double std_error;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y, std::size_t first) {
  const std::size_t n = x.size() - first;
  double mx = 0;
  double my = 0;
  for (std::size_t i = first; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0;
  double sxy = 0;
  double syy = 0;
  for (std::size_t i = first; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  Line l{};
  l.slope = sxy / sxx;
  l.intercept = my - l.slope * mx;
  double ss_res = 0;
  for (std::size_t i = first; i < x.size(); ++i) {
    const double r = y[i] - (l.intercept + l.slope * x[i]);
    ss_res += r * r;
  }
  l.r2 = syy > 0 ? 1 - ss_res / syy : 1.0;
  l.std_error = n > 2 ? std::sqrt(ss_res / static_cast<double>(n - 2) / sxx) : 0.0;
  return l;
}

void add_unique(std::vector<std::string>& v, const std::string& s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

}  // namespace

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::PowerDb:
      return "power_db";
    case Axis::RateBpcu:
      return "rate_bpcu";
    case Axis::RelayCount:
      return "relay_count";
    case Axis::IthDb:
      return "ith_db";
  }
  return "?";
}

std::optional<Axis> parse_axis(std::string_view name) {
  const std::string s = lower(name);
  for (Axis a : {Axis::PowerDb, Axis::RateBpcu, Axis::RelayCount, Axis::IthDb}) {
    if (s == to_string(a)) return a;
  }
  return std::nullopt;
}

std::string_view to_string(MethodChoice m) {
  switch (m) {
    case MethodChoice::Analytic:
      return "analytic";
    case MethodChoice::MonteCarlo:
      return "mc";
    case MethodChoice::Both:
      return "both";
  }
  return "?";
}

std::optional<MethodChoice> parse_method(std::string_view name) {
  const std::string s = lower(name);
  if (s == "analytic") return MethodChoice::Analytic;
  if (s == "mc" || s == "montecarlo") return MethodChoice::MonteCarlo;
  if (s == "both") return MethodChoice::Both;
  return std::nullopt;
}

std::vector<std::string> validate_spec(const SweepSpec& spec) {
  std::vector<std::string> out;
  if (!std::isfinite(spec.from) || !std::isfinite(spec.to) || !(spec.from < spec.to)) {
    out.emplace_back("from/to: require from < to");
  }
  if (spec.axis == Axis::RelayCount) {
    if (spec.from != std::round(spec.from) || spec.to != std::round(spec.to) || spec.from < 1) {
      out.emplace_back("from/to: relay_count bounds must be integers >= 1");
    }
  } else if (spec.steps < 2) {
    out.emplace_back("steps: must be >= 2");
  }
  if (spec.protocols.empty()) out.emplace_back("protocols: at least one protocol required");
  if (spec.axis != Axis::RateBpcu && !(spec.rate > 0)) out.emplace_back("rate: must be positive");
  if (spec.axis == Axis::RateBpcu && !(spec.from > 0)) {
    out.emplace_back("from: rates must be positive");
  }
  if (spec.axis == Axis::IthDb && !spec.cognitive) {
    out.emplace_back("axis: ith_db requires cognitive evaluation");
  }
  if (spec.method != MethodChoice::Analytic && spec.trials < 1) {
    out.emplace_back("trials: must be >= 1");
  }
  return out;
}

std::vector<double> axis_values(const SweepSpec& spec) {
  std::vector<double> v;
  if (spec.axis == Axis::RelayCount) {
    for (long k = std::lround(spec.from); k <= std::lround(spec.to); ++k) {
      v.push_back(static_cast<double>(k));
    }
    return v;
  }
  const int n = spec.steps;
  for (int i = 0; i < n; ++i) {
    v.push_back(i == n - 1 ? spec.to : spec.from + (spec.to - spec.from) * i / (n - 1));
  }
  return v;
}

NetworkConfig apply_axis(const NetworkConfig& cfg, Axis axis, double value) {
  NetworkConfig out = cfg;
  switch (axis) {
    case Axis::PowerDb:
      out.p_s = out.p_r = db_to_linear(value);
      break;
    case Axis::RateBpcu:
      break;
    case Axis::RelayCount:
      out.relays = static_cast<int>(std::lround(value));
      break;
    case Axis::IthDb:
      out.i_th = db_to_linear(value);
      break;
  }
  return out;
}

SweepResult run_sweep(const SweepSpec& spec, const NetworkConfig& cfg) {
  auto problems = validate_spec(spec);
  if (!problems.empty()) throw ConfigError(std::move(problems));

  const std::vector<double> points = axis_values(spec);
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t p = 0; p < spec.protocols.size(); ++p) {
      if (spec.method != MethodChoice::MonteCarlo) cells.push_back({i, p, Method::Analytic});
      if (spec.method != MethodChoice::Analytic) cells.push_back({i, p, Method::MonteCarlo});
    }
  }

  std::vector<std::optional<SweepRow>> slots(cells.size());
  std::vector<std::vector<std::string>> failures(cells.size());

  auto evaluate = [&](std::size_t index) {
    const Cell& cell = cells[index];
    const Protocol protocol = spec.protocols[cell.protocol];
    const double value = points[cell.point];
    const NetworkConfig c = apply_axis(cfg, spec.axis, value);
    const double rate = spec.axis == Axis::RateBpcu ? value : spec.rate;
    try {
      auto violations = validate_config(c, protocol, cell.method);
      if (spec.cognitive && !c.is_cognitive()) {
        violations.emplace_back("ith: cognitive evaluation requires sp, rp and ith");
      }
      if (!violations.empty()) throw ConfigError(std::move(violations));
      SweepRow row;
      row.axis_value = value;
      row.protocol = protocol;
      row.method = cell.method;
      if (cell.method == Method::Analytic) {
        row.outage = analytic::outage(c, protocol, rate, spec.cognitive);
      } else {
        montecarlo::Options opt;
        opt.cognitive = spec.cognitive;
        opt.workers = 1;
        opt.hd = spec.hd;
        const auto e = montecarlo::estimate_outage(c, protocol, rate, spec.trials, spec.seed, opt);
        row.outage = e.p_hat;
        row.std_error = e.std_error;
        row.trials = e.trials;
        row.seed = e.seed;
      }
      row.throughput = analytic::throughput(rate, row.outage, protocol);
      slots[index] = row;
    } catch (const ConfigError& e) {
      failures[index] = e.violations();
    } catch (const Error& e) {
      failures[index] = {e.what()};
    }
  };

  unsigned workers = spec.workers == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                       : spec.workers;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, cells.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) evaluate(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) evaluate(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  SweepResult result;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Protocol protocol = spec.protocols[cells[i].protocol];
    if (slots[i]) result.rows.push_back(*slots[i]);
    for (const auto& msg : failures[i]) add_unique(result.errors[protocol], msg);
  }
  // A protocol with any failing cell reports no rows at all.
  std::erase_if(result.rows, [&](const SweepRow& r) { return result.errors.count(r.protocol) > 0; });
  return result;
}

DiversityFit diversity_fit(const std::vector<PowerPoint>& points, double min_p_out) {
  std::vector<double> x;
  std::vector<double> y;
  double last_power = 0;
  for (const auto& pt : points) {
    if (!(pt.power > last_power)) throw DomainError("diversity_fit: powers must be increasing");
    last_power = pt.power;
    if (!(pt.p_out > 0)) throw DomainError("diversity_fit: outage probabilities must be positive");
    if (pt.p_out < min_p_out) continue;
    x.push_back(std::log10(pt.power));
    y.push_back(-std::log10(pt.p_out));
  }
  if (x.size() < 4) throw DomainError("diversity_fit: at least four usable points required");

  const std::size_t n = x.size();
  std::optional<Line> chosen;
  std::size_t first = n - 4;
  for (std::size_t start = 0; start + 4 <= n; ++start) {
    const Line l = least_squares(x, y, start);
    if (l.r2 >= 0.999) {
      chosen = l;
      first = start;
      break;
    }
  }
  const Line tail = least_squares(x, y, n - 4);
  if (!chosen) chosen = tail;

  DiversityFit fit;
  fit.slope = chosen->slope;
  fit.std_error = chosen->std_error;
  fit.points_used = static_cast<int>(n - first);
  fit.floor_detected = tail.slope < 0.1;
  return fit;
}

ValidationRow compare(Protocol protocol, double p_analytic, const montecarlo::OutageEstimate& e) {
  ValidationRow row;
  row.protocol = protocol;
  row.p_analytic = p_analytic;
  row.p_hat = e.p_hat;
  row.std_error = e.std_error;
  const double delta = e.p_hat - p_analytic;
  if (e.std_error > 0) {
    row.z = delta / e.std_error;
  } else {
    row.z = delta == 0 ? 0.0 : std::copysign(INFINITY, delta);
  }
  row.pass = std::abs(row.z) <= 3 || std::abs(delta) <= 1e-3;
  return row;
}

bool ValidationReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const ValidationRow& r) { return r.pass; });
}

ValidationReport validate_report(const NetworkConfig& cfg, const std::vector<Protocol>& protocols,
                                 double rate, std::uint64_t trials, std::uint64_t seed,
                                 bool cognitive, unsigned workers) {
  ValidationReport report;
  for (Protocol p : protocols) {
    const double analytic_p = analytic::outage(cfg, p, rate, cognitive);
    montecarlo::Options opt;
    opt.cognitive = cognitive;
    opt.workers = workers;
    const auto e = montecarlo::estimate_outage(cfg, p, rate, trials, seed, opt);
    report.rows.push_back(compare(p, analytic_p, e));
  }
  return report;
}

}  // namespace fdrs::analysis
