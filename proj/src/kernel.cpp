#include "cornea/kernel.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cornea/error.hpp"
#include "cornea/special.hpp"

namespace cornea {
namespace {

void require_a(double a, const char* fn) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError(std::string(fn) + ": a must be positive and finite");
  }
}

void require_radius(double r, bool allow_origin, const char* fn) {
  const bool low_ok = allow_origin ? r >= 0.0 : r > 0.0;
  if (!low_ok || !(r <= 1.0)) {
    throw DomainError(std::string(fn) + ": r = " + std::to_string(r) +
                      (allow_origin ? " outside [0, 1]" : " outside (0, 1]"));
  }
}

}  // namespace

ModelParams::ModelParams(double a, double b) : a_(a), b_(b), sqrt_a_(0.0) {
  require_a(a, "ModelParams");
  if (!(b >= 0.0) || !std::isfinite(b)) {
    throw DomainError("ModelParams: b must be nonnegative and finite");
  }
  sqrt_a_ = std::sqrt(a);
}

ModelParams nondimensionalize(const DimensionalParams& p) {
  if (!(p.tension > 0.0 && p.stiffness > 0.0 && p.pressure > 0.0 &&
        p.scale_radius > 0.0)) {
    throw DomainError("nondimensionalize: all dimensional constants must be positive");
  }
  const double radius = p.scale_radius;
  return ModelParams(p.stiffness * radius * radius / p.tension,
                     p.pressure * radius / p.tension);
}

double normal_projection(double x) noexcept { return 1.0 / std::sqrt(1.0 + x * x); }

double v0(double r, double a) {
  require_a(a, "v0");
  require_radius(r, true, "v0");
  return special::i0(std::sqrt(a) * r);
}

double v1(double r, double a) {
  require_a(a, "v1");
  require_radius(r, false, "v1");
  if (r == 1.0) return 0.0;
  const double s = std::sqrt(a);
  return special::i0(s) * special::k0(s * r) - special::i0(s * r) * special::k0(s);
}

double dv0(double r, double a) {
  require_a(a, "dv0");
  require_radius(r, true, "dv0");
  const double s = std::sqrt(a);
  return s * special::i1(s * r);
}

double dv1(double r, double a) {
  require_a(a, "dv1");
  require_radius(r, false, "dv1");
  const double s = std::sqrt(a);
  return -s * (special::i0(s) * special::k1(s * r) +
               special::i1(s * r) * special::k0(s));
}

KernelBounds bound_constants(const ModelParams& params) {
  const double s = params.sqrt_a();
  const double i0s = special::i0(s);
  const double i1s = special::i1(s);
  KernelBounds k{};
  k.q_bound = params.b() / params.a() * special::bessel_i0_minus_one(s) / i0s;
  k.r_bound = params.b() / s * (i1s / i0s) * (2.0 * i0s - 1.0);
  k.lipschitz_m = lipschitz_constant;
  k.contraction = k.lipschitz_m * k.r_bound;
  return k;
}

double theorem1_b_max(double a) {
  require_a(a, "theorem1_b_max");
  const double s = std::sqrt(a);
  const double i0s = special::i0(s);
  return 1.5 * std::sqrt(3.0) * s * i0s / (special::i1(s) * (2.0 * i0s - 1.0));
}

double lemma_b_max(double a) {
  require_a(a, "lemma_b_max");
  const double s = std::sqrt(a);
  const double i0m1 = special::bessel_i0_minus_one(s);
  if (i0m1 == 0.0) return std::numeric_limits<double>::infinity();
  return s / special::i1(s) * std::sqrt(2.0 * i0m1 + 1.0) / i0m1;
}

AdmissibilityReport admissibility(const ModelParams& params) {
  const double t1 = theorem1_b_max(params.a());
  const double lm = lemma_b_max(params.a());
  return AdmissibilityReport{params, t1, lm, params.b() < t1, params.b() <= lm};
}

}  // namespace cornea
