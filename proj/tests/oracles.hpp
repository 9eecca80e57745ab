#pragma once
// Independent reference computations used only by the tests.

#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

// sum_{k<terms} (z/2)^{2k} / (k!)^2
inline double i0_series(double z, int terms = 30) {
  const double q = 0.25 * z * z;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < terms; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k));
    sum += term;
  }
  return sum;
}

// K0(z) = int_0^inf exp(-z cosh t) dt
inline double k0_integral(double z) {
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate([z](double t) { return std::exp(-z * std::cosh(t)); });
}

// K1(z) = int_0^inf exp(-z cosh t) cosh t dt
inline double k1_integral(double z) {
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate([z](double t) {
    const double c = std::cosh(t);
    return std::isfinite(c) ? std::exp(-z * c) * c : 0.0;
  });
}

template <class F>
double integrate(F f, double lo, double hi) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(f, lo, hi);
}

template <class F>
double central_difference(F f, double x, double step) {
  return (f(x + step) - f(x - step)) / (2.0 * step);
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

}  // namespace oracle
