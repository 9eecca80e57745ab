#pragma once

// Modified Bessel functions I_nu and K_nu of integer order, evaluated from
// scratch. Every routine is a pure function of its arguments.

namespace cornea::special {

/// Euler-Mascheroni constant.
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

/// Order of a modified Bessel function. Only 0, 1 and 2 exist; order 2 is
/// used for the apex curvature identity 2 I_1' = I_0 + I_2.
class BesselOrder {
 public:
  /// Throws DomainError unless nu is 0, 1 or 2.
  explicit BesselOrder(int nu);

  int value() const noexcept { return nu_; }

  static BesselOrder zero() noexcept { return BesselOrder(Tag{}, 0); }
  static BesselOrder one() noexcept { return BesselOrder(Tag{}, 1); }
  static BesselOrder two() noexcept { return BesselOrder(Tag{}, 2); }

  friend bool operator==(BesselOrder, BesselOrder) = default;

 private:
  struct Tag {};
  BesselOrder(Tag, int nu) noexcept : nu_(nu) {}
  int nu_;
};

/// I_nu(z) for z >= 0. Power series below z = 25, Hankel asymptotic series
/// above. Relative error below 1e-12 on [0, 100].
double bessel_i(BesselOrder nu, double z);

/// K_nu(z) for z > 0 and nu in {0, 1}. Logarithmic series for z <= 2,
/// Steed/Temme continued fraction above.
double bessel_k(BesselOrder nu, double z);

/// I_0(z)K_1(z) + I_1(z)K_0(z) - 1/z, which vanishes identically.
double wronskian_defect(double z);

/// I_0(z) - 1 without cancellation for small z.
double bessel_i0_minus_one(double z);

inline double i0(double z) { return bessel_i(BesselOrder::zero(), z); }
inline double i1(double z) { return bessel_i(BesselOrder::one(), z); }
inline double i2(double z) { return bessel_i(BesselOrder::two(), z); }
inline double k0(double z) { return bessel_k(BesselOrder::zero(), z); }
inline double k1(double z) { return bessel_k(BesselOrder::one(), z); }

}  // namespace cornea::special
