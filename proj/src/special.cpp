#include "cornea/special.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cornea/error.hpp"

namespace cornea::special {
namespace {

constexpr double kSeriesCrossover = 25.0;
constexpr double kLogSeriesCrossover = 2.0;
constexpr double kEps = 1e-17;
constexpr int kMaxTerms = 500;

void require_finite(double z, const char* fn) {
  if (!std::isfinite(z)) {
    throw DomainError(std::string(fn) + ": argument must be finite");
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// sum_k (z/2)^(2k+nu) / (k! (k+nu)!), starting at k = first.
double i_series(int nu, double z, int first = 0) {
  const double q = 0.25 * z * z;
  double term = std::pow(0.5 * z, nu) / factorial(nu);
  for (int k = 1; k <= first; ++k) term *= q / (k * (k + nu));
  double sum = 0.0;
  for (int k = first; k < kMaxTerms; ++k) {
    sum += term;
    term *= q / ((k + 1) * (k + 1 + nu));
    if (term <= kEps * sum) break;
  }
  return sum;
}

// Hankel expansion: I_nu(z) ~ e^z / sqrt(2 pi z) * sum_k (-1)^k a_k(nu) / z^k.
double i_asymptotic(int nu, double z) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (mu - odd * odd) / (8.0 * k * z);
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) <= kEps * std::abs(sum)) break;
  }
  return std::exp(z) / std::sqrt(2.0 * std::numbers::pi * z) * sum;
}

// K_0 and K_1 for z <= 2 from the logarithmic series with digamma weights.
void k_series(double z, double& k0v, double& k1v) {
  const double q = 0.25 * z * z;
  const double log_half = std::log(0.5 * z);

  // K_0 = -ln(z/2) I_0 + sum_k psi(k+1) q^k / (k!)^2
  double psi = -euler_gamma;
  double t0 = 1.0;
  double s0 = 0.0;
  for (int k = 0; k < kMaxTerms; ++k) {
    if (k > 0) {
      psi += 1.0 / k;
      t0 *= q / (static_cast<double>(k) * k);
    }
    const double d = psi * t0;
    s0 += d;
    if (k > 0 && std::abs(d) <= kEps * std::abs(s0)) break;
  }
  k0v = -log_half * i_series(0, z) + s0;

  // K_1 = 1/z + ln(z/2) I_1 - (z/4) sum_k (psi(k+1) + psi(k+2)) q^k / (k!(k+1)!)
  double psi_a = -euler_gamma;        // psi(k+1)
  double psi_b = 1.0 - euler_gamma;   // psi(k+2)
  double t1 = 1.0;
  double s1 = 0.0;
  for (int k = 0; k < kMaxTerms; ++k) {
    if (k > 0) {
      psi_a += 1.0 / k;
      psi_b += 1.0 / (k + 1);
      t1 *= q / (static_cast<double>(k) * (k + 1));
    }
    const double d = (psi_a + psi_b) * t1;
    s1 += d;
    if (k > 0 && std::abs(d) <= kEps * std::abs(s1)) break;
  }
  k1v = 1.0 / z + log_half * i_series(1, z) - 0.25 * z * s1;
}

// Steed's continued fraction (Temme's CF2) for K_0 and K_1, z > 2.
void k_continued_fraction(double z, double& k0v, double& k1v) {
  double b = 2.0 * (1.0 + z);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 1; i < 10000; ++i) {
    a -= 2 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < 1e-17) break;
  }
  h *= a1;
  k0v = std::sqrt(std::numbers::pi / (2.0 * z)) * std::exp(-z) / s;
  k1v = k0v * (z + 0.5 - h) / z;
}

void k_pair(double z, double& k0v, double& k1v) {
  if (z <= kLogSeriesCrossover) {
    k_series(z, k0v, k1v);
  } else {
    k_continued_fraction(z, k0v, k1v);
  }
}

}  // namespace

BesselOrder::BesselOrder(int nu) : nu_(nu) {
  if (nu < 0 || nu > 2) {
    throw DomainError("BesselOrder: only orders 0, 1, 2 are supported, got " +
                      std::to_string(nu));
  }
}

double bessel_i(BesselOrder nu, double z) {
  require_finite(z, "bessel_i");
  if (z < 0.0) throw DomainError("bessel_i: argument must be >= 0");
  if (z == 0.0) return nu.value() == 0 ? 1.0 : 0.0;
  if (z <= kSeriesCrossover) return i_series(nu.value(), z);
  return i_asymptotic(nu.value(), z);
}

double bessel_k(BesselOrder nu, double z) {
  require_finite(z, "bessel_k");
  if (z <= 0.0) throw DomainError("bessel_k: argument must be > 0");
  if (nu.value() == 2) {
    throw DomainError("bessel_k: order 2 is not provided");
  }
  double k0v = 0.0;
  double k1v = 0.0;
  k_pair(z, k0v, k1v);
  return nu.value() == 0 ? k0v : k1v;
}

double wronskian_defect(double z) {
  require_finite(z, "wronskian_defect");
  if (z <= 0.0) throw DomainError("wronskian_defect: argument must be > 0");
  double k0v = 0.0;
  double k1v = 0.0;
  k_pair(z, k0v, k1v);
  return i0(z) * k1v + i1(z) * k0v - 1.0 / z;
}

double bessel_i0_minus_one(double z) {
  require_finite(z, "bessel_i0_minus_one");
  if (z < 0.0) throw DomainError("bessel_i0_minus_one: argument must be >= 0");
  if (z == 0.0) return 0.0;
  if (z < 1.0) return i_series(0, z, 1);
  return i0(z) - 1.0;
}


}  // namespace cornea::special
