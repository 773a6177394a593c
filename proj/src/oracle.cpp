// Quadrature evaluations of the defining integrals. These deliberately use
// Boost's incomplete gamma rather than fdrs::specfun so that agreement with
// the closed forms is an independent check.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "fdrs/analytic.hpp"
#include "fdrs/error.hpp"

namespace fdrs::analytic {

namespace {

namespace bm = boost::math;

constexpr double kQuadTol = 1e-13;

template <class F>
double integrate_finite(F f, double a, double b) {
  if (!(b > a)) return 0.0;
  static thread_local bm::quadrature::tanh_sinh<double> integrator;
  double error = 0;
  double l1 = 0;
  const double v = integrator.integrate(f, a, b, kQuadTol, &error, &l1);
  if (!(error <= 1e-10 * std::max(l1, 1e-300) + 1e-300)) {
    throw NonConvergence("quadrature oracle: finite integral did not converge");
  }
  return v;
}

template <class F>
double integrate_half_line(F f) {
  static thread_local bm::quadrature::exp_sinh<double> integrator;
  double error = 0;
  double l1 = 0;
  const double v = integrator.integrate(f, kQuadTol, &error, &l1);
  if (!(error <= 1e-10 * std::max(l1, 1e-300) + 1e-300)) {
    throw NonConvergence("quadrature oracle: semi-infinite integral did not converge");
  }
  return v;
}

double gamma_pdf(double x, double m, double theta) {
  if (x <= 0) return 0.0;
  return bm::gamma_p_derivative(m, x / theta) / theta;
}

double gamma_q(double m, double x) { return x <= 0 ? 1.0 : bm::gamma_q(m, x); }
double gamma_p(double m, double x) { return x <= 0 ? 0.0 : bm::gamma_p(m, x); }

struct Link {
  double m;
  double theta;
};

Link sd_link(const NetworkConfig& cfg) { return {cfg.sd->m, cfg.p_s * cfg.sd->scale()}; }
Link rd_link(const NetworkConfig& cfg) { return {cfg.rd.m, cfg.p_r * cfg.rd.scale()}; }

void require_sd(const NetworkConfig& cfg) {
  if (!cfg.sd) throw ConfigError({"sd: oracle requires a direct S-D link"});
}

}  // namespace

double ccdf_ratio_gamma_quad(double z, const RatioParams& p) {
  if (!(z >= 0)) throw DomainError("ccdf_ratio_gamma_quad: z must be >= 0");
  if (z == 0) return 1.0;
  return integrate_half_line([&](double t) {
    return bm::gamma_q(p.m1, z * (t + 1) / p.theta1) * gamma_pdf(t, p.m2, p.theta2);
  });
}

double cdf_ratio_gamma_quad(double z, const RatioParams& p) {
  if (!(z >= 0)) throw DomainError("cdf_ratio_gamma_quad: z must be >= 0");
  if (z == 0) return 0.0;
  return integrate_half_line([&](double t) {
    return bm::gamma_p(p.m1, z * (t + 1) / p.theta1) * gamma_pdf(t, p.m2, p.theta2);
  });
}

double cdf_ndl_quad(double x, const NetworkConfig& cfg, int relays) {
  if (x <= 0) return relays == 0 ? 1.0 : 0.0;
  const Link rd = rd_link(cfg);
  const double f = cdf_ratio_gamma_quad(x, first_hop_params(cfg));
  const double fbar = ccdf_ratio_gamma_quad(x, first_hop_params(cfg));
  return std::pow(f + fbar * gamma_p(rd.m, x / rd.theta), relays);
}

double cdf_idl_quad(double x, const NetworkConfig& cfg, int relays) {
  require_sd(cfg);
  if (x <= 0) return relays == 0 ? 1.0 : 0.0;
  const Link rd = rd_link(cfg);
  const Link sd = sd_link(cfg);
  const double f = cdf_ratio_gamma_quad(x, first_hop_params(cfg));
  const double fbar = ccdf_ratio_gamma_quad(x, first_hop_params(cfg));
  return integrate_half_line([&](double b) {
    const double path = f + fbar * gamma_p(rd.m, x * (b + 1) / rd.theta);
    return std::pow(path, relays) * gamma_pdf(b, sd.m, sd.theta);
  });
}

double cdf_idl_dt_quad(double x, const NetworkConfig& cfg, int relays) {
  require_sd(cfg);
  if (x <= 0) return 0.0;
  const Link rd = rd_link(cfg);
  const Link sd = sd_link(cfg);
  const double f = cdf_ratio_gamma_quad(x, first_hop_params(cfg));
  const double fbar = ccdf_ratio_gamma_quad(x, first_hop_params(cfg));
  return integrate_finite(
      [&](double b) {
        const double path = f + fbar * gamma_p(rd.m, x * (b + 1) / rd.theta);
        return std::pow(path, relays) * gamma_pdf(b, sd.m, sd.theta);
      },
      0.0, x);
}

double cdf_sdf_quad(double x, const NetworkConfig& cfg, int relays) {
  require_sd(cfg);
  if (x <= 0) return 0.0;
  const Link rd = rd_link(cfg);
  const Link sd = sd_link(cfg);
  const double f = cdf_ratio_gamma_quad(x, first_hop_params(cfg));
  const double fbar = ccdf_ratio_gamma_quad(x, first_hop_params(cfg));
  return integrate_finite(
      [&](double b) {
        const double path = f + fbar * gamma_p(rd.m, (x - b) / rd.theta);
        return std::pow(path, relays) * gamma_pdf(b, sd.m, sd.theta);
      },
      0.0, x);
}

FeasibilityDist feasibility_dist_quad(const NetworkConfig& cfg) {
  if (!cfg.is_cognitive()) {
    throw ConfigError({"ith: cognitive evaluation requires sp, rp and ith"});
  }
  const int k_count = cfg.relays;
  const double ith = *cfg.i_th;
  const Link sp{cfg.sp->m, cfg.p_s * cfg.sp->scale()};
  const Link rp{cfg.rp->m, cfg.p_r * cfg.rp->scale()};

  FeasibilityDist out;
  out.p.assign(static_cast<std::size_t>(k_count) + 1, 0.0);
  // Given β = P_S g_SP <= I_th, the number of feasible relays is
  // Binomial(K, P(P_R g_RP <= I_th - β)).
  for (int l = 0; l <= k_count; ++l) {
    const double binom = bm::binomial_coefficient<double>(static_cast<unsigned>(k_count),
                                                          static_cast<unsigned>(l));
    out.p[static_cast<std::size_t>(l)] = integrate_finite(
        [&](double b) {
          const double q = gamma_q(rp.m, (ith - b) / rp.theta);
          const double p = gamma_p(rp.m, (ith - b) / rp.theta);
          return binom * std::pow(p, l) * std::pow(q, k_count - l) *
                 gamma_pdf(b, sp.m, sp.theta);
        },
        0.0, ith);
  }
  out.p_tilde0 = out.p[0];
  out.p[0] += bm::gamma_q(sp.m, ith / sp.theta);
  return out;
}

}  // namespace fdrs::analytic
