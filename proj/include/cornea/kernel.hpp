#pragma once

// Green's-function ingredients of the radial membrane problem
//
//   -(1/r)(r h')' + a h = b / sqrt(1 + h'^2),   h'(0) = 0,  h(1) = 0,
//
// and the constants that control the Picard iteration built on it.

namespace cornea {

/// Nondimensional model parameters: a = k R^2 / T (stiffness), b = P R / T
/// (pressure). a must be positive; b = 0 is accepted as the unforced limit.
class ModelParams {
 public:
  ModelParams(double a, double b);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double sqrt_a() const noexcept { return sqrt_a_; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double a_;
  double b_;
  double sqrt_a_;
};

/// Physical constants of the membrane, SI units.
struct DimensionalParams {
  double tension;       // N/m
  double stiffness;     // N/m^3
  double pressure;      // N/m^2
  double scale_radius;  // m
};

ModelParams nondimensionalize(const DimensionalParams& p);

/// Lipschitz constant of P(x) = 1/sqrt(1+x^2), i.e. 2/(3 sqrt 3).
inline constexpr double lipschitz_constant = 0.38490017945975050967276585366;

/// P(x) = 1/sqrt(1 + x^2), the normal-projection factor.
double normal_projection(double x) noexcept;

// Homogeneous solutions. v1 is singular at r = 0 and is refused there.
double v0(double r, double a);
double v1(double r, double a);
double dv0(double r, double a);
double dv1(double r, double a);

struct KernelBounds {
  double q_bound;      // sup_r int |F(r,t)| dt
  double r_bound;      // sup_r int |G(r,t)| dt
  double lipschitz_m;  // Lipschitz constant of P
  double contraction;  // lipschitz_m * r_bound
};

KernelBounds bound_constants(const ModelParams& params);

/// Largest b (exclusive) for which the Picard map is a contraction.
double theorem1_b_max(double a);

/// Largest b (inclusive) for which the derivative and envelope estimates hold.
double lemma_b_max(double a);

struct AdmissibilityReport {
  ModelParams params;
  double theorem1_b_max;
  double lemma_b_max;
  bool theorem1_ok;  // b <  theorem1_b_max
  bool lemma_ok;     // b <= lemma_b_max
};

AdmissibilityReport admissibility(const ModelParams& params);

}  // namespace cornea
