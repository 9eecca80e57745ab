#pragma once

namespace cornea {

/// Axis-aligned elliptical domain with semi-axes R1 (along x) and R2 (along y)
/// in nondimensional units.
class DomainEllipse {
 public:
  DomainEllipse(double semi_axis_x, double semi_axis_y);

  static DomainEllipse circle() { return DomainEllipse(1.0, 1.0); }

  /// Ellipse with geometric-mean semi-axis 1 and the given signed squared
  /// eccentricity; positive values are wider along x, negative along y.
  static DomainEllipse from_signed_ecc_sq(double signed_ecc_sq);

  double semi_axis_x() const noexcept { return rx_; }
  double semi_axis_y() const noexcept { return ry_; }

  /// 1 - (min/max)^2, negated when the y semi-axis is the longer one.
  double signed_ecc_sq() const noexcept;

  /// Rescaled so that sqrt(R1 R2) = 1.
  DomainEllipse normalized() const;

  friend bool operator==(const DomainEllipse&, const DomainEllipse&) = default;

 private:
  double rx_;
  double ry_;
};

/// sqrt(x^2/R1^2 + y^2/R2^2); the Euclidean radius for the unit circle.
double elliptical_radius(double x, double y, const DomainEllipse& ellipse) noexcept;

}  // namespace cornea
