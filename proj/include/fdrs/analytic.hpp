#pragma once

// Exact end-to-end SINR distributions of opportunistic full-duplex relay
// selection under Nakagami-m fading, with and without an underlay
// interference constraint.
//
// All closed forms are evaluated internally in 113-bit precision; the
// returned doubles are clamped to [0, 1].

#include <vector>

#include "fdrs/channel.hpp"
#include "fdrs/protocol.hpp"

namespace fdrs::analytic {

/// Shapes and scales of Z = X1 / (X2 + 1), Xi ~ Gamma(mi, thetai).
/// The closed form needs integer m2; the quadrature oracle does not.
struct RatioParams {
  double m1 = 1.0;
  double theta1 = 1.0;
  double m2 = 1.0;
  double theta2 = 1.0;
};

/// First-hop SINR parameters (m_SR, P_S θ_SR, m_RR, P_R^λ θ_RR).
RatioParams first_hop_params(const NetworkConfig& cfg);

/// Probability that exactly L of K relays satisfy the interference
/// constraint, and the probability that none does while the source alone does.
struct FeasibilityDist {
  std::vector<double> p;  // p[0..K]
  double p_tilde0 = 0.0;
};

/// CDF of Z = X1 / (X2 + 1).
double cdf_ratio_gamma(double z, const RatioParams& params);

/// Non-cognitive end-to-end SINR CDFs with L candidate relays.
double cdf_ndl(double x, const NetworkConfig& cfg, int relays);
double cdf_idl(double x, const NetworkConfig& cfg, int relays);
double cdf_idl_dt(double x, const NetworkConfig& cfg, int relays);
double cdf_sdf(double x, const NetworkConfig& cfg, int relays);

/// Dispatches to the per-protocol CDF. Throws ConfigError for HD protocols.
double cdf(double x, const NetworkConfig& cfg, Protocol protocol, int relays);

FeasibilityDist feasibility_dist(const NetworkConfig& cfg);

/// Total-probability mixture over the number of feasible relays.
double cdf_cognitive(double x, const NetworkConfig& cfg, Protocol protocol);
double cdf_cognitive(double x, const NetworkConfig& cfg, Protocol protocol,
                     const FeasibilityDist& feasibility);

/// SINR threshold 2^R - 1 for source rate R (bits per channel use).
double outage_threshold(double rate);

/// Threshold for outage comparisons: half-duplex protocols must carry twice
/// the source rate, 2^{2R} - 1.
double outage_threshold(double rate, Protocol protocol);

/// Full-duplex outage at rate R; `cognitive` selects the mixture CDF.
double outage(const NetworkConfig& cfg, Protocol protocol, double rate, bool cognitive);

/// R (1 - P_out), halved for half-duplex protocols.
double throughput(double rate, double p_out, Protocol protocol);

double throughput(const NetworkConfig& cfg, Protocol protocol, double rate, bool cognitive);

// Quadrature oracles. Each integrates the defining conditional expression
// directly with an independent incomplete-gamma implementation.

double cdf_ratio_gamma_quad(double z, const RatioParams& params);
double ccdf_ratio_gamma_quad(double z, const RatioParams& params);
double cdf_ndl_quad(double x, const NetworkConfig& cfg, int relays);
double cdf_idl_quad(double x, const NetworkConfig& cfg, int relays);
double cdf_idl_dt_quad(double x, const NetworkConfig& cfg, int relays);
double cdf_sdf_quad(double x, const NetworkConfig& cfg, int relays);
FeasibilityDist feasibility_dist_quad(const NetworkConfig& cfg);

}  // namespace fdrs::analytic
