#include "fdrs/specfun.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

namespace fdrs::specfun::detail {

double tricomi_u_integral(double a, double b, double z) {
  static thread_local boost::math::quadrature::exp_sinh<double> integrator;
  const double log_norm = std::lgamma(a);
  auto f = [=](double t) {
    if (t <= 0) return 0.0;
    return std::exp(-z * t + (a - 1) * std::log(t) + (b - a - 1) * std::log1p(t) - log_norm);
  };
  double error = 0;
  double l1 = 0;
  const double value = integrator.integrate(f, 1e-14, &error, &l1);
  if (!(error <= 1e-10 * l1)) {
    throw NonConvergence("tricomi_u: Laplace integral did not converge");
  }
  return value;
}

}  // namespace fdrs::specfun::detail
