#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fdrs/analytic.hpp"
#include "fdrs/error.hpp"
#include "support.hpp"

using namespace fdrs;
using namespace fdrs::analytic;
using doctest::Approx;

namespace {

NetworkConfig rayleigh_small() {
  NetworkConfig c;
  c.relays = 2;
  c.p_s = c.p_r = 10;
  c.sr = {1, 10};
  c.rd = {1, 10};
  c.rr = {1, 1};
  return c;
}

double by_protocol(Protocol p, double x, const NetworkConfig& c, int l) {
  return cdf(x, c, p, l);
}

}  // namespace

TEST_CASE("ratio CDF examples") {
  CHECK(cdf_ratio_gamma(0.0, {1, 1, 1, 1}) == 0.0);
  CHECK(cdf_ratio_gamma(1.0, {1, 1, 1, 1}) == Approx(1 - std::exp(-1.0) / 2).epsilon(1e-13));
  CHECK(cdf_ratio_gamma(1.0, {1, 1, 1, 1}) == Approx(0.8160603).epsilon(1e-7));
  // Erlang-2 survival e^{-t}(1 + t) averaged over t = 2(X2 + 1), X2 ~ Exp(2).
  CHECK(cdf_ratio_gamma(2.0, {2, 1, 1, 0.5}) == Approx(1 - 1.75 * std::exp(-2.0)).epsilon(1e-13));
  CHECK_THROWS_AS(cdf_ratio_gamma(1.0, {1, 1, 1.5, 1}), DomainError);
  CHECK_THROWS_AS(cdf_ratio_gamma(-1.0, {1, 1, 1, 1}), DomainError);
}

TEST_CASE("ratio CDF agrees with the quadrature oracle") {
  for (double m1 : {0.5, 1.0, 1.7, 3.0, 5.5}) {
    for (int m2 : {1, 2, 4}) {
      const RatioParams p{m1, 2.3, double(m2), 0.8};
      double last = 0;
      for (double z : support::geomspace(1e-3, 200, 15)) {
        const double f = cdf_ratio_gamma(z, p);
        CHECK_MESSAGE(std::abs(f - cdf_ratio_gamma_quad(z, p)) <= 1e-10,
                      "m1=" << m1 << " m2=" << m2 << " z=" << z);
        CHECK(f >= last);
        last = f;
      }
    }
  }
}

TEST_CASE("ratio quadrature oracle handles non-integer m2") {
  const RatioParams p{1.5, 1.0, 1.5, 0.7};
  std::mt19937_64 rng(99);
  std::gamma_distribution<double> x1(p.m1, p.theta1);
  std::gamma_distribution<double> x2(p.m2, p.theta2);
  const int n = 400000;
  int hits = 0;
  for (int i = 0; i < n; ++i) hits += x1(rng) / (x2(rng) + 1) <= 1.2;
  const double phat = double(hits) / n;
  const double se = std::sqrt(phat * (1 - phat) / n);
  CHECK(std::abs(cdf_ratio_gamma_quad(1.2, p) - phat) < 4 * se);
  CHECK(cdf_ratio_gamma_quad(1.2, p) + ccdf_ratio_gamma_quad(1.2, p) == Approx(1).epsilon(1e-12));
}

TEST_CASE("NDL closed form") {
  NetworkConfig c = rayleigh_small();
  CHECK(cdf_ndl(0.0, c, 2) == 0.0);
  const double expected = std::pow(1 - std::exp(-0.06) / 1.3, 2);
  CHECK(cdf_ndl(3.0, c, 2) == Approx(expected).epsilon(1e-12));
  CHECK(cdf_ndl(3.0, c, 2) == Approx(0.075936).epsilon(1e-5));

  NetworkConfig n = support::load("fig2a");
  n.sr.m = 1.6;  // real-valued first and second hop shapes
  n.rd.m = 2.3;
  for (double x : {0.2, 1.5, 3.0, 8.0, 25.0}) {
    const double one = cdf_ndl(x, n, 1);
    CHECK(cdf_ndl(x, n, 3) == Approx(std::pow(one, 3)).epsilon(1e-12));
    CHECK(std::abs(cdf_ndl(x, n, 3) - cdf_ndl_quad(x, n, 3)) <= 1e-10);
  }
}

TEST_CASE("IDL closed form") {
  NetworkConfig c = rayleigh_small();
  c.sd = LinkSpec{1, 1};
  CHECK(cdf_idl(0.0, c, 1) == 0.0);
  const double s = std::exp(-0.06) / 1.3;
  CHECK(cdf_idl(3.0, c, 1) == Approx(1 - s / 1.3).epsilon(1e-12));
  CHECK(cdf_idl(3.0, c, 1) == Approx(0.442742).epsilon(1e-5));

  NetworkConfig f = support::load("fig2a");
  NetworkConfig weak = f;
  weak.sd->avg_power = 1e-8;
  for (double x : {0.5, 3.0, 10.0}) {
    CHECK(std::abs(cdf_idl(x, weak, 3) - cdf_ndl(x, weak, 3)) <= 1e-5);
    CHECK(std::abs(cdf_sdf(x, weak, 3) - cdf_ndl(x, weak, 3)) <= 1e-5);
  }
}

TEST_CASE("closed forms agree with the quadrature oracles on the fig2a parameters") {
  const NetworkConfig f = support::load("fig2a");
  for (double x : support::geomspace(0.05, 80, 20)) {
    for (int l : {1, 3}) {
      CHECK(std::abs(cdf_idl(x, f, l) - cdf_idl_quad(x, f, l)) <= 1e-8);
      CHECK(std::abs(cdf_idl_dt(x, f, l) - cdf_idl_dt_quad(x, f, l)) <= 1e-8);
      CHECK(std::abs(cdf_sdf(x, f, l) - cdf_sdf_quad(x, f, l)) <= 1e-8);
    }
  }
}

TEST_CASE("closed forms with a non-integer direct-link shape") {
  NetworkConfig f = support::load("fig2a");
  f.sd->m = 1.5;
  for (double x : {0.3, 2.0, 9.0}) {
    CHECK(std::abs(cdf_idl(x, f, 3) - cdf_idl_quad(x, f, 3)) <= 1e-8);
  }
  CHECK_THROWS_AS(cdf_idl_dt(1.0, f, 3), ConfigError);
}

TEST_CASE("SDF at the eta = 0 boundary") {
  // With P_S = P_R, eta_k = (1/pi_SD - k/pi_RD)/P vanishes for k = pi_RD/pi_SD = 2.
  NetworkConfig c;
  c.relays = 3;
  c.sr = {1, 10};
  c.rd = {1, 10};
  c.rr = {1, 1};
  c.sd = LinkSpec{1, 5};
  for (double x : {0.5, 3.0, 12.0}) {
    const double at = cdf_sdf(x, c, 3);
    CHECK(std::abs(at - cdf_sdf_quad(x, c, 3)) <= 1e-9);
    NetworkConfig lo = c;
    NetworkConfig hi = c;
    lo.sd->avg_power = 5 * (1 - 1e-7);
    hi.sd->avg_power = 5 * (1 + 1e-7);
    CHECK(std::abs(cdf_sdf(x, lo, 3) - at) < 1e-6);
    CHECK(std::abs(cdf_sdf(x, hi, 3) - at) < 1e-6);
  }
}

TEST_CASE("CDF limits and large arguments") {
  const NetworkConfig f = support::load("fig2a");
  CHECK(cdf_sdf(1e6, f, 3) >= 1 - 1e-6);
  CHECK(cdf_idl_dt(1e6, f, 3) >= 1 - 1e-6);
  CHECK(cdf_idl(1e6, f, 3) >= 1 - 1e-6);
  CHECK(cdf_ndl(1e6, f, 3) >= 1 - 1e-6);
  for (Protocol p : kFullDuplexProtocols) CHECK(cdf(0.0, f, p, 3) == 0.0);
}

TEST_CASE("protocol dominance and monotonicity in x") {
  for (const char* name : {"fig2a", "fig4"}) {
    const NetworkConfig f = support::load(name);
    double last[4] = {0, 0, 0, 0};
    for (double x : support::geomspace(1e-3, 1e3, 60)) {
      const double idl = cdf_idl(x, f, 3);
      const double dt = cdf_idl_dt(x, f, 3);
      const double sdf = cdf_sdf(x, f, 3);
      CHECK(sdf <= dt + 1e-15);
      CHECK(dt <= idl + 1e-15);
      int i = 0;
      for (Protocol p : kFullDuplexProtocols) {
        const double v = cdf(x, f, p, 3);
        CHECK(v >= 0);
        CHECK(v <= 1);
        CHECK(v >= last[i] - 1e-15);
        last[i++] = v;
      }
    }
  }
}

TEST_CASE("lambda monotonicity for P_R > 1") {
  NetworkConfig f = support::load("fig2a", {"p_s_db=6", "p_r_db=6"});
  for (Protocol p : kFullDuplexProtocols) {
    for (double x : {0.5, 3.0, 15.0}) {
      double last = 0;
      for (double lam : support::linspace(0, 1, 6)) {
        f.lambda = lam;
        const double v = by_protocol(p, x, f, 3);
        CHECK(v >= last - 1e-15);
        last = v;
      }
    }
  }
}

TEST_CASE("exponential-fading reductions") {
  NetworkConfig c = support::load("fig4");
  for (double lam : {0.0, 0.5, 1.0}) {
    c.lambda = lam;
    const support::Rayleigh r{c.sr.avg_power, c.rd.avg_power, c.rr.avg_power, c.sd->avg_power,
                              lam, c.relays};
    for (double pdb : support::linspace(-5, 45, 11)) {
      const double p = db_to_linear(pdb);
      NetworkConfig at = c;
      at.p_s = at.p_r = p;
      for (double x : {0.4, 3.0, 7.0}) {
        CHECK(std::abs(cdf_ndl(x, at, 3) - r.ndl(x, p)) <= 1e-10);
        CHECK(std::abs(cdf_idl(x, at, 3) - r.idl(x, p)) <= 1e-10);
        CHECK(std::abs(cdf_idl_dt(x, at, 3) - r.idl_dt(x, p)) <= 1e-10);
        CHECK(std::abs(cdf_sdf(x, at, 3) - r.sdf(x, p)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("feasibility distribution") {
  NetworkConfig e;
  e.relays = 1;
  e.sr = e.rd = e.rr = {1, 1};
  e.sp = LinkSpec{1, 1};
  e.rp = LinkSpec{1, 1};
  e.i_th = 2.0;
  const FeasibilityDist d = feasibility_dist(e);
  CHECK(d.p[1] == Approx(1 - 3 * std::exp(-2.0)).epsilon(1e-12));
  CHECK(std::abs(d.p[1] - 0.5939942) < 1e-7);

  const NetworkConfig g = support::load("fig2b");
  const FeasibilityDist a = feasibility_dist(g);
  const FeasibilityDist q = feasibility_dist_quad(g);
  double sum = 0;
  for (std::size_t l = 0; l < a.p.size(); ++l) {
    CHECK(std::abs(a.p[l] - q.p[l]) <= 1e-10);
    sum += a.p[l];
  }
  CHECK(std::abs(sum - 1) <= 1e-9);
  CHECK(a.p_tilde0 <= a.p[0]);
  CHECK(std::abs(a.p_tilde0 - q.p_tilde0) <= 1e-10);

  NetworkConfig loose = g;
  loose.i_th = 1e9;
  CHECK(feasibility_dist(loose).p.back() == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("no-feasible-relay branch uses the S-P scale") {
  // Distinct S-D and S-P scales so that the alternative reading of the branch
  // condition would change the result; the oracle arbitrates.
  NetworkConfig g = support::load("fig2b", {"pi_sd_db=-8", "m_sp=2", "pi_sp_db=2", "k=4"});
  const FeasibilityDist a = feasibility_dist(g);
  const FeasibilityDist q = feasibility_dist_quad(g);
  CHECK(std::abs(a.p[0] - q.p[0]) <= 1e-10);
  CHECK(std::abs(a.p_tilde0 - q.p_tilde0) <= 1e-10);
  NetworkConfig real_sp = g;
  real_sp.sp->m = 1.4;
  const FeasibilityDist ar = feasibility_dist(real_sp);
  const FeasibilityDist qr = feasibility_dist_quad(real_sp);
  for (std::size_t l = 0; l < ar.p.size(); ++l) CHECK(std::abs(ar.p[l] - qr.p[l]) <= 1e-9);
}

TEST_CASE("cognitive mixture") {
  const NetworkConfig g = support::load("fig2b");
  NetworkConfig loose = g;
  loose.i_th = 1e12;
  for (Protocol p : kFullDuplexProtocols) {
    for (double x : {0.5, 3.0, 10.0}) {
      CHECK(std::abs(cdf_cognitive(x, loose, p) - cdf(x, g, p, g.relays)) <= 1e-6);
    }
  }

  NetworkConfig tight = g;
  tight.i_th = 1e-12;
  CHECK(cdf_cognitive(3.0, tight, Protocol::MHDF_NDL) == Approx(1.0).epsilon(1e-9));
  CHECK(cdf_cognitive(3.0, tight, Protocol::MHDF_IDL) == Approx(1.0).epsilon(1e-9));
  const FeasibilityDist dt = feasibility_dist(tight);
  const double fbar_sd = 1 - cdf_idl_dt(3.0, tight, 0);
  CHECK(cdf_cognitive(3.0, tight, Protocol::MHDF_IDL_DT) ==
        Approx(dt.p[0] - fbar_sd * dt.p_tilde0).epsilon(1e-12));

  // A delta at L = K reproduces the non-cognitive CDF exactly.
  FeasibilityDist delta;
  delta.p.assign(static_cast<std::size_t>(g.relays) + 1, 0.0);
  delta.p.back() = 1.0;
  for (Protocol p : kFullDuplexProtocols) {
    for (double x : {0.1, 2.0, 20.0}) {
      CHECK(cdf_cognitive(x, g, p, delta) == cdf(x, g, p, g.relays));
    }
  }

  // Right-continuous jump at zero for the direct-transmission protocols.
  const FeasibilityDist d = feasibility_dist(g);
  CHECK(cdf_cognitive(0.0, g, Protocol::SDF) == Approx(d.p[0] - d.p_tilde0).epsilon(1e-12));
  CHECK(cdf_cognitive(0.0, g, Protocol::MHDF_NDL) == Approx(d.p[0]).epsilon(1e-12));
  CHECK_THROWS_AS(cdf_cognitive(1.0, support::load("fig2a"), Protocol::SDF), ConfigError);
}

TEST_CASE("outage and throughput") {
  CHECK(outage_threshold(2.0) == Approx(3.0).epsilon(1e-15));
  CHECK(outage_threshold(2.0, Protocol::HD_MRC) == Approx(15.0).epsilon(1e-15));
  const NetworkConfig r = rayleigh_small();
  CHECK(outage(r, Protocol::MHDF_NDL, 2.0, false) == Approx(0.075936).epsilon(1e-5));
  CHECK(outage(r, Protocol::MHDF_NDL, 1e-9, false) < 1e-15);
  CHECK_THROWS_AS(outage(r, Protocol::MHDF_NDL, 0.0, false), DomainError);
  CHECK_THROWS_AS(outage(support::load("fig2a"), Protocol::HD_SDF, 2.0, false), ConfigError);

  CHECK(throughput(3.0, 0.0, Protocol::SDF) == 3.0);
  CHECK(throughput(3.0, 0.0, Protocol::HD_SDF) == 1.5);
  CHECK(throughput(3.0, 0.25, Protocol::HD_MRC) == Approx(0.5 * 3 * 0.75));
  const NetworkConfig f = support::load("fig2a");
  for (Protocol p : kFullDuplexProtocols) {
    for (double rate : {0.5, 2.0, 4.0}) {
      const double t = throughput(f, p, rate, false);
      CHECK(t <= rate);
      CHECK(t == Approx(rate * (1 - outage(f, p, rate, false))).epsilon(1e-15));
    }
  }
}
