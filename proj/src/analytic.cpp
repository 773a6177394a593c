#include "fdrs/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fdrs/error.hpp"
#include "fdrs/quad.hpp"
#include "fdrs/specfun.hpp"

namespace fdrs::analytic {

namespace {

using specfun::kExtended;
using specfun::detail::CompensatedSum;

double clamp01(quad v) {
  const double d = static_cast<double>(v);
  return std::clamp(d, 0.0, 1.0);
}

quad lgam(quad a) { return specfun::ln_gamma(a); }

quad log_binomial(int n, int k) {
  return lgam(quad(n + 1)) - lgam(quad(k + 1)) - lgam(quad(n - k + 1));
}

// (P, Q) of a Gamma(m, theta) variable at x.
struct Split {
  quad lower;
  quad upper;
};

Split gamma_split(quad m, quad x) {
  if (x <= 0) return {0, 1};
  const quad p = specfun::reg_lower_gamma(m, x, kExtended);
  if (p < quad(0.5)) return {p, 1 - p};
  const quad q = specfun::reg_upper_gamma(m, x, kExtended);
  return {1 - q, q};
}

// F_Z and 1 - F_Z for Z = X1/(X2+1). The Whittaker factor of each summand is
// used in its Tricomi form, c^{-d} W_{a,b}(c) = e^{-c/2} U(k+1, m1+k+1, c),
// which keeps the first parameter a positive integer for every real m1.
Split ratio_split(quad z, quad m1, quad theta1, int m2, quad theta2) {
  using std::exp;
  using std::log;
  if (z <= 0) return {0, 1};
  const quad y = z / theta1;
  const quad c = y + 1 / theta2;
  const quad log_prefix = m1 * log(y) - y - lgam(m1);
  CompensatedSum<quad> tail;
  for (int k = 0; k < m2; ++k) {
    const quad u = specfun::tricomi_u(quad(k + 1), m1 + k + 1, c, kExtended);
    tail.add(exp(log_prefix - k * log(theta2)) * u);
  }
  const Split g = gamma_split(m1, y);
  if (g.lower < quad(0.5)) {
    const quad f = g.lower + tail.value();
    return {f, 1 - f};
  }
  const quad fbar = g.upper - tail.value();
  return {1 - fbar, fbar};
}

// log of ∫_0^x (x-β)^D β^{m-1} e^{-βη} dβ.
quad log_rl_integral(quad x, int d, quad m, quad eta) {
  using std::abs;
  using std::log;
  const quad dd = quad(d);
  const quad base = (dd + m) * log(x) + lgam(dd + 1) + lgam(m) - lgam(dd + m + 1);
  const quad y = x * eta;
  if (abs(y) < quad(1e-9)) return base;
  if (eta < 0) return base + specfun::log_kummer_m(m, dd + m + 1, -y, kExtended);
  return base - y + specfun::log_kummer_m(dd + 1, dd + m + 1, y, kExtended);
}

// log of k! / Π_n (k_n! Γ(n)^{k_n}) and D = Σ k_n (n - 1) for one composition.
struct Multinomial {
  quad log_coef;
  int d;
};

Multinomial multinomial(int k, const std::vector<int>& parts) {
  quad lc = lgam(quad(k + 1));
  int d = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    const int kn = parts[i];
    if (kn == 0) continue;
    lc -= lgam(quad(kn + 1)) + kn * lgam(quad(n));
    d += kn * (n - 1);
  }
  return {lc, d};
}

int as_int(double m) { return static_cast<int>(std::lround(m)); }

struct Scales {
  quad x;
  quad theta_rd;  // P_R θ_RD
  quad theta_sd;  // P_S θ_SD
  quad m_sd;
  int m_rd;
};

Scales scales(double x, const NetworkConfig& cfg) {
  return {quad(x), quad(cfg.p_r) * quad(cfg.rd.scale()), quad(cfg.p_s) * quad(cfg.sd->scale()),
          quad(cfg.sd->m), as_int(cfg.rd.m)};
}

// Σ_{k=0}^{L} C(L,k) (-F̄_Z)^k S_k.
template <class Term>
quad binomial_mix(int relays, quad fbar, Term&& s_k) {
  using std::pow;
  CompensatedSum<quad> sum;
  quad binom = 1;
  for (int k = 0; k <= relays; ++k) {
    if (k > 0) binom = binom * quad(relays - k + 1) / quad(k);
    const quad w = binom * pow(fbar, k);
    if (w == 0) continue;
    const quad term = w * s_k(k);
    sum.add(k % 2 == 0 ? term : -term);
  }
  return sum.value();
}

void check_x(double x) {
  if (std::isnan(x)) throw DomainError("cdf: x must not be NaN");
}

void check_relays(int relays) {
  if (relays < 0) throw DomainError("cdf: relay count must be >= 0");
}

quad first_hop_fbar(quad x, const NetworkConfig& cfg) {
  const RatioParams p = first_hop_params(cfg);
  return ratio_split(x, quad(p.m1), quad(p.theta1), as_int(p.m2), quad(p.theta2)).upper;
}

quad cdf_ndl_q(double x, const NetworkConfig& cfg, int relays) {
  using std::pow;
  const quad xq(x);
  const RatioParams p = first_hop_params(cfg);
  const Split z = ratio_split(xq, quad(p.m1), quad(p.theta1), as_int(p.m2), quad(p.theta2));
  const Split h = gamma_split(quad(cfg.rd.m), xq / (quad(cfg.p_r) * quad(cfg.rd.scale())));
  const quad survive = z.upper * h.upper;
  const quad path = survive < quad(0.5) ? 1 - survive : z.lower + h.lower * z.upper;
  return pow(path, relays);
}

// E[Q_RD(x(β + 1))^k] over β = P_S g_SD.
quad idl_s(const Scales& s, int k) {
  using std::exp;
  using std::log;
  CompensatedSum<quad> sum;
  const quad eta = 1 / s.theta_sd + s.x * k / s.theta_rd;
  const quad lead = -s.m_sd * log(s.theta_sd) - s.x * k / s.theta_rd;
  for (const auto& parts : specfun::compositions(k, s.m_rd)) {
    const Multinomial c = multinomial(k, parts);
    const quad dd = quad(c.d);
    const quad w = specfun::whittaker_w_scaled((dd - s.m_sd + 1) / 2, -(s.m_sd + dd) / 2, eta,
                                               kExtended);
    const quad log_c = c.log_coef + dd * log(s.x / s.theta_rd);
    sum.add(exp(lead + log_c - (s.m_sd + dd + 1) / 2 * log(eta)) * w);
  }
  return sum.value();
}

// E[Q_RD(x(β + 1))^k ; β <= x].
quad idl_dt_s(const Scales& s, int k) {
  using std::exp;
  using std::log;
  CompensatedSum<quad> sum;
  const quad eta = 1 / s.theta_sd + s.x * k / s.theta_rd;
  const quad lead = -s.m_sd * log(s.theta_sd) - lgam(s.m_sd) - s.x * k / s.theta_rd;
  for (const auto& parts : specfun::compositions(k, s.m_rd)) {
    const Multinomial c = multinomial(k, parts);
    const quad log_c = c.log_coef + c.d * log(s.x / s.theta_rd);
    for (int r = 0; r <= c.d; ++r) {
      const quad a = quad(r) + s.m_sd;
      const quad p = specfun::reg_lower_gamma(a, s.x * eta, kExtended);
      if (p == 0) continue;
      sum.add(exp(lead + log_c + log_binomial(c.d, r) + lgam(a) - a * log(eta)) * p);
    }
  }
  return sum.value();
}

// E[Q_RD(x - β)^k ; β <= x].
quad sdf_s(const Scales& s, int k) {
  using std::exp;
  using std::log;
  CompensatedSum<quad> sum;
  const quad eta = 1 / s.theta_sd - quad(k) / s.theta_rd;
  const quad lead = -s.m_sd * log(s.theta_sd) - lgam(s.m_sd) - s.x * k / s.theta_rd;
  for (const auto& parts : specfun::compositions(k, s.m_rd)) {
    const Multinomial c = multinomial(k, parts);
    const quad log_c = c.log_coef - c.d * log(s.theta_rd);
    sum.add(exp(lead + log_c + log_rl_integral(s.x, c.d, s.m_sd, eta)));
  }
  return sum.value();
}

template <class S>
quad direct_link_cdf(double x, const NetworkConfig& cfg, int relays, S&& s_k) {
  const quad xq(x);
  const Scales s = scales(x, cfg);
  const quad fbar = first_hop_fbar(xq, cfg);
  return binomial_mix(relays, fbar, [&](int k) { return s_k(s, k); });
}

double checked(double x, const NetworkConfig& cfg, Protocol protocol, int relays) {
  check_x(x);
  check_relays(relays);
  require_valid(cfg, protocol, Method::Analytic);
  return x;
}

// ∫_0^I Q_RP(I - β)^n f_SP(β) dβ.
quad feasibility_g(const NetworkConfig& cfg, int n) {
  using std::exp;
  using std::log;
  const quad ith(*cfg.i_th);
  const quad theta_sp = quad(cfg.p_s) * quad(cfg.sp->scale());
  const quad theta_rp = quad(cfg.p_r) * quad(cfg.rp->scale());
  const quad m_sp(cfg.sp->m);
  const int m_rp = as_int(cfg.rp->m);
  const quad eta = 1 / theta_sp - quad(n) / theta_rp;
  const quad lead = -m_sp * log(theta_sp) - lgam(m_sp) - quad(n) * ith / theta_rp;
  CompensatedSum<quad> sum;
  for (const auto& parts : specfun::compositions(n, m_rp)) {
    const Multinomial c = multinomial(n, parts);
    sum.add(exp(lead + c.log_coef - c.d * log(theta_rp) + log_rl_integral(ith, c.d, m_sp, eta)));
  }
  return sum.value();
}

void require_cognitive(const NetworkConfig& cfg) {
  if (!cfg.is_cognitive()) {
    throw ConfigError({"ith: cognitive evaluation requires sp, rp and ith"});
  }
}

}  // namespace

RatioParams first_hop_params(const NetworkConfig& cfg) {
  return {cfg.sr.m, cfg.p_s * cfg.sr.scale(), cfg.rr.m,
          std::pow(cfg.p_r, cfg.lambda) * cfg.rr.scale()};
}

double cdf_ratio_gamma(double z, const RatioParams& p) {
  if (!(z >= 0)) throw DomainError("cdf_ratio_gamma: z must be >= 0");
  if (!(p.m1 >= 0.5) || !(p.theta1 > 0) || !(p.theta2 > 0) || !(p.m2 >= 1) ||
      p.m2 != std::round(p.m2)) {
    throw DomainError("cdf_ratio_gamma: requires m1 >= 0.5, integer m2 >= 1, positive scales");
  }
  return clamp01(ratio_split(quad(z), quad(p.m1), quad(p.theta1), as_int(p.m2), quad(p.theta2))
                     .lower);
}

double cdf_ndl(double x, const NetworkConfig& cfg, int relays) {
  checked(x, cfg, Protocol::MHDF_NDL, relays);
  if (x <= 0) return relays == 0 ? 1.0 : 0.0;
  return clamp01(cdf_ndl_q(x, cfg, relays));
}

double cdf_idl(double x, const NetworkConfig& cfg, int relays) {
  checked(x, cfg, Protocol::MHDF_IDL, relays);
  if (x <= 0) return relays == 0 ? 1.0 : 0.0;
  return clamp01(direct_link_cdf(x, cfg, relays, idl_s));
}

double cdf_idl_dt(double x, const NetworkConfig& cfg, int relays) {
  checked(x, cfg, Protocol::MHDF_IDL_DT, relays);
  if (x <= 0) return 0.0;
  return clamp01(direct_link_cdf(x, cfg, relays, idl_dt_s));
}

double cdf_sdf(double x, const NetworkConfig& cfg, int relays) {
  checked(x, cfg, Protocol::SDF, relays);
  if (x <= 0) return 0.0;
  return clamp01(direct_link_cdf(x, cfg, relays, sdf_s));
}

double cdf(double x, const NetworkConfig& cfg, Protocol protocol, int relays) {
  switch (protocol) {
    case Protocol::MHDF_NDL:
      return cdf_ndl(x, cfg, relays);
    case Protocol::MHDF_IDL:
      return cdf_idl(x, cfg, relays);
    case Protocol::MHDF_IDL_DT:
      return cdf_idl_dt(x, cfg, relays);
    case Protocol::SDF:
      return cdf_sdf(x, cfg, relays);
    default:
      throw ConfigError({std::string(to_string(protocol)) +
                         ": half-duplex baselines are simulation-only"});
  }
}

FeasibilityDist feasibility_dist(const NetworkConfig& cfg) {
  require_cognitive(cfg);
  auto violations = validate_structure(cfg);
  if (cfg.rp->m != std::round(cfg.rp->m)) {
    violations.emplace_back("m_rp: feasibility distribution requires integer m_RP");
  }
  if (!violations.empty()) throw ConfigError(std::move(violations));

  const int k_count = cfg.relays;
  std::vector<quad> g(static_cast<std::size_t>(k_count) + 1);
  for (int n = 0; n <= k_count; ++n) g[static_cast<std::size_t>(n)] = feasibility_g(cfg, n);

  FeasibilityDist out;
  out.p.assign(static_cast<std::size_t>(k_count) + 1, 0.0);
  for (int l_count = 1; l_count <= k_count; ++l_count) {
    CompensatedSum<quad> sum;
    quad binom = 1;
    for (int l = 0; l <= l_count; ++l) {
      if (l > 0) binom = binom * quad(l_count - l + 1) / quad(l);
      const quad term = binom * g[static_cast<std::size_t>(k_count - l_count + l)];
      sum.add(l % 2 == 0 ? term : -term);
    }
    using std::exp;
    out.p[static_cast<std::size_t>(l_count)] =
        clamp01(exp(log_binomial(k_count, l_count)) * sum.value());
  }
  const quad theta_sp = quad(cfg.p_s) * quad(cfg.sp->scale());
  const quad q_sp =
      specfun::reg_upper_gamma(quad(cfg.sp->m), quad(*cfg.i_th) / theta_sp, kExtended);
  const quad tilde = g[static_cast<std::size_t>(k_count)];
  out.p[0] = clamp01(q_sp + tilde);
  out.p_tilde0 = std::min(clamp01(tilde), out.p[0]);
  return out;
}

double cdf_cognitive(double x, const NetworkConfig& cfg, Protocol protocol) {
  return cdf_cognitive(x, cfg, protocol, feasibility_dist(cfg));
}

double cdf_cognitive(double x, const NetworkConfig& cfg, Protocol protocol,
                     const FeasibilityDist& feasibility) {
  check_x(x);
  require_cognitive(cfg);
  require_valid(cfg, protocol, Method::Analytic);
  if (feasibility.p.size() != static_cast<std::size_t>(cfg.relays) + 1) {
    throw DomainError("cdf_cognitive: feasibility distribution has the wrong length");
  }
  CompensatedSum<double> sum;
  const double p0 = feasibility.p[0];
  if (allows_direct_transmission(protocol)) {
    const double tilde = feasibility.p_tilde0;
    sum.add(std::max(p0 - tilde, 0.0));
    if (x > 0) {
      const double theta_sd = cfg.p_s * cfg.sd->scale();
      sum.add(tilde * specfun::reg_lower_gamma(cfg.sd->m, x / theta_sd));
    }
  } else {
    sum.add(p0);
  }
  for (int l = 1; l <= cfg.relays; ++l) {
    const double w = feasibility.p[static_cast<std::size_t>(l)];
    if (w == 0) continue;
    sum.add(w * cdf(x, cfg, protocol, l));
  }
  return std::clamp(sum.value(), 0.0, 1.0);
}

double outage_threshold(double rate) {
  if (!(rate >= 0)) throw DomainError("outage_threshold: rate must be >= 0");
  return std::expm1(rate * std::log(2.0));
}

double outage_threshold(double rate, Protocol protocol) {
  return outage_threshold(is_half_duplex(protocol) ? 2 * rate : rate);
}

double outage(const NetworkConfig& cfg, Protocol protocol, double rate, bool cognitive) {
  if (!(rate > 0)) throw DomainError("outage: rate must be positive");
  const double x = outage_threshold(rate, protocol);
  return cognitive ? cdf_cognitive(x, cfg, protocol) : cdf(x, cfg, protocol, cfg.relays);
}

double throughput(double rate, double p_out, Protocol protocol) {
  if (!(p_out >= 0 && p_out <= 1)) throw DomainError("throughput: outage must lie in [0, 1]");
  const double t = rate * (1 - p_out);
  return is_half_duplex(protocol) ? t / 2 : t;
}

double throughput(const NetworkConfig& cfg, Protocol protocol, double rate, bool cognitive) {
  return throughput(rate, outage(cfg, protocol, rate, cognitive), protocol);
}

}  // namespace fdrs::analytic
