#include "fdrs/channel.hpp"

#include <cmath>
#include <string>

#include "fdrs/error.hpp"

namespace fdrs {

namespace {

bool is_integer(double x) { return std::isfinite(x) && x == std::round(x); }

void check_link(std::vector<std::string>& out, const std::string& name, const LinkSpec& link) {
  if (!(link.m >= 0.5)) out.push_back("m_" + name + ": Nakagami shape must be >= 0.5");
  if (!(link.avg_power > 0) || !std::isfinite(link.avg_power)) {
    out.push_back("pi_" + name + ": average power must be positive and finite");
  }
}

}  // namespace

RelayLinks NetworkConfig::relay(int k) const {
  if (!relay_overrides.empty()) return relay_overrides.at(static_cast<std::size_t>(k));
  return RelayLinks{sr, rd, rr, rp};
}

std::vector<std::string> validate_structure(const NetworkConfig& cfg) {
  std::vector<std::string> out;
  if (cfg.relays < 1) out.emplace_back("k: relay count must be >= 1");
  if (!(cfg.p_s > 0) || !std::isfinite(cfg.p_s)) out.emplace_back("p_s: must be positive");
  if (!(cfg.p_r > 0) || !std::isfinite(cfg.p_r)) out.emplace_back("p_r: must be positive");
  if (!(cfg.lambda >= 0 && cfg.lambda <= 1)) out.emplace_back("lambda: must lie in [0, 1]");
  check_link(out, "sr", cfg.sr);
  check_link(out, "rd", cfg.rd);
  check_link(out, "rr", cfg.rr);
  if (cfg.sd) check_link(out, "sd", *cfg.sd);
  if (cfg.sp) check_link(out, "sp", *cfg.sp);
  if (cfg.rp) check_link(out, "rp", *cfg.rp);

  const int present = int(cfg.sp.has_value()) + int(cfg.rp.has_value()) + int(cfg.i_th.has_value());
  if (present != 0 && present != 3) {
    if (!cfg.sp) out.emplace_back("sp: cognitive config requires the S-P link");
    if (!cfg.rp) out.emplace_back("rp: cognitive config requires the R-P link");
    if (!cfg.i_th) out.emplace_back("ith: cognitive config requires an interference threshold");
  }
  if (cfg.i_th && (!(*cfg.i_th > 0) || !std::isfinite(*cfg.i_th))) {
    out.emplace_back("ith: interference threshold must be positive");
  }

  if (!cfg.relay_overrides.empty()) {
    if (cfg.relays >= 1 && cfg.relay_overrides.size() != static_cast<std::size_t>(cfg.relays)) {
      out.emplace_back("relay overrides: expected one entry per relay");
    }
    for (std::size_t k = 0; k < cfg.relay_overrides.size(); ++k) {
      const auto& r = cfg.relay_overrides[k];
      const std::string tag = "relay." + std::to_string(k + 1) + ".";
      check_link(out, tag + "sr", r.sr);
      check_link(out, tag + "rd", r.rd);
      check_link(out, tag + "rr", r.rr);
      if (r.rp) check_link(out, tag + "rp", *r.rp);
      if (cfg.is_cognitive() && !r.rp) out.push_back("pi_" + tag + "rp: missing for cognitive config");
    }
  }
  return out;
}

std::vector<std::string> validate_config(const NetworkConfig& cfg, Protocol protocol,
                                         Method method) {
  std::vector<std::string> out = validate_structure(cfg);
  const std::string name(to_string(protocol));

  if (needs_direct_link(protocol) && !cfg.sd) {
    out.push_back("sd: " + name + " requires a direct S-D link");
  }
  if (method == Method::MonteCarlo) return out;

  const std::string who = name + " analytic";
  if (is_half_duplex(protocol)) {
    out.push_back(name + ": half-duplex baselines are simulation-only");
    return out;
  }
  if (!cfg.relay_overrides.empty()) {
    out.emplace_back("relay overrides: analytic evaluation assumes symmetric relays");
  }
  if (!is_integer(cfg.rr.m)) out.push_back("m_rr: " + who + " requires integer m_RR");
  if (protocol != Protocol::MHDF_NDL && !is_integer(cfg.rd.m)) {
    out.push_back("m_rd: " + who + " requires integer m_RD");
  }
  if ((protocol == Protocol::MHDF_IDL_DT || protocol == Protocol::SDF) && cfg.sd &&
      !is_integer(cfg.sd->m)) {
    out.push_back("m_sd: " + who + " requires integer m_SD");
  }
  if (cfg.rp && !is_integer(cfg.rp->m)) {
    out.push_back("m_rp: " + who + " of the feasibility distribution requires integer m_RP");
  }
  return out;
}

const NetworkConfig& require_valid(const NetworkConfig& cfg, Protocol protocol, Method method) {
  auto violations = validate_config(cfg, protocol, method);
  if (!violations.empty()) throw ConfigError(std::move(violations));
  return cfg;
}

Rng substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x9e3779b9u};
  return Rng(seq);
}

double sample_gamma(double m, double theta, Rng& rng) {
  std::gamma_distribution<double> dist(m, theta);
  return dist(rng);
}

void sample_realization(const NetworkConfig& cfg, Rng& rng, Realization& out) {
  const auto k_count = static_cast<std::size_t>(cfg.relays);
  const bool cognitive = cfg.is_cognitive();
  out.g_sr.resize(k_count);
  out.g_rd.resize(k_count);
  out.g_rr.resize(k_count);
  out.g_rp.resize(cognitive ? k_count : 0);

  out.g_sd = cfg.sd ? sample_gamma(cfg.sd->m, cfg.sd->scale(), rng) : 0.0;
  if (cognitive) {
    out.g_sp = sample_gamma(cfg.sp->m, cfg.sp->scale(), rng);
  } else {
    out.g_sp.reset();
  }
  if (cfg.relay_overrides.empty()) {
    for (std::size_t k = 0; k < k_count; ++k) {
      out.g_sr[k] = sample_gamma(cfg.sr.m, cfg.sr.scale(), rng);
      out.g_rd[k] = sample_gamma(cfg.rd.m, cfg.rd.scale(), rng);
      out.g_rr[k] = sample_gamma(cfg.rr.m, cfg.rr.scale(), rng);
      if (cognitive) out.g_rp[k] = sample_gamma(cfg.rp->m, cfg.rp->scale(), rng);
    }
    return;
  }
  for (std::size_t k = 0; k < k_count; ++k) {
    const RelayLinks& r = cfg.relay_overrides[k];
    out.g_sr[k] = sample_gamma(r.sr.m, r.sr.scale(), rng);
    out.g_rd[k] = sample_gamma(r.rd.m, r.rd.scale(), rng);
    out.g_rr[k] = sample_gamma(r.rr.m, r.rr.scale(), rng);
    if (cognitive) {
      const LinkSpec& rp = r.rp ? *r.rp : *cfg.rp;
      out.g_rp[k] = sample_gamma(rp.m, rp.scale(), rng);
    }
  }
}

Realization sample_realization(const NetworkConfig& cfg, Rng& rng) {
  Realization r;
  sample_realization(cfg, rng, r);
  return r;
}

}  // namespace fdrs
