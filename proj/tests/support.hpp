#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "fdrs/channel.hpp"
#include "fdrs/config.hpp"

#ifndef FDRS_CONFIG_DIR
#define FDRS_CONFIG_DIR "configs"
#endif

namespace support {

inline fdrs::NetworkConfig load(const std::string& name,
                                const std::vector<std::string>& overrides = {}) {
  return fdrs::config::parse_file(std::string(FDRS_CONFIG_DIR) + "/" + name + ".cfg", overrides);
}

inline std::vector<double> geomspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a * std::pow(b / a, double(i) / (n - 1)));
  return v;
}

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
  return v;
}

// Exponential-fading outage expressions with P_S = P_R = p, written directly
// from the single-relay survival functions:
//   a = x (1/pi_SR + 1/pi_RD),  b = x pi_RR / pi_SR,
//   c_k = x k pi_SD / pi_RD + 1,  d_k = x (x k / pi_RD + 1 / pi_SD),
//   p_k = x (1/pi_SD - k/pi_RD),  q_k = 1 - k pi_SD / pi_RD.
struct Rayleigh {
  double pi_sr, pi_rd, pi_rr, pi_sd;
  double lambda;
  int relays;

  double hop_survival(double x, double p) const {
    const double a = x * (1 / pi_sr + 1 / pi_rd);
    const double b = x * pi_rr / pi_sr;
    return std::exp(-a / p) / (1 + b * std::pow(p, lambda - 1));
  }

  double ndl(double x, double p) const { return std::pow(1 - hop_survival(x, p), relays); }

  template <class F>
  double mix(double x, double p, F&& weight) const {
    const double s = hop_survival(x, p);
    double sum = 0;
    double binom = 1;
    for (int k = 0; k <= relays; ++k) {
      if (k > 0) binom = binom * (relays - k + 1) / k;
      sum += binom * std::pow(-s, k) * weight(k);
    }
    return sum;
  }

  double idl(double x, double p) const {
    return mix(x, p, [&](int k) { return 1 / (x * k * pi_sd / pi_rd + 1); });
  }

  double idl_dt(double x, double p) const {
    return mix(x, p, [&](int k) {
      const double c = x * k * pi_sd / pi_rd + 1;
      const double d = x * (x * k / pi_rd + 1 / pi_sd);
      return -std::expm1(-d / p) / c;
    });
  }

  double sdf(double x, double p) const {
    return mix(x, p, [&](int k) {
      const double q = 1 - k * pi_sd / pi_rd;
      const double pk = x * (1 / pi_sd - k / pi_rd);
      if (q == 0) return x / (p * pi_sd);
      return -std::expm1(-pk / p) / q;
    });
  }
};

}  // namespace support
