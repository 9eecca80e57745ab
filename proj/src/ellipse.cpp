#include "cornea/ellipse.hpp"

#include <algorithm>
#include <cmath>

#include "cornea/error.hpp"

namespace cornea {

DomainEllipse::DomainEllipse(double semi_axis_x, double semi_axis_y)
    : rx_(semi_axis_x), ry_(semi_axis_y) {
  if (!(rx_ > 0.0) || !(ry_ > 0.0) || !std::isfinite(rx_) || !std::isfinite(ry_)) {
    throw DomainError("DomainEllipse: semi-axes must be positive and finite");
  }
}

DomainEllipse DomainEllipse::from_signed_ecc_sq(double signed_ecc_sq) {
  if (!(std::abs(signed_ecc_sq) < 1.0)) {
    throw DomainError("DomainEllipse: squared eccentricity must lie in (-1, 1)");
  }
  const double ratio = std::sqrt(1.0 - std::abs(signed_ecc_sq));  // minor / major
  const double major = 1.0 / std::sqrt(ratio);
  const double minor = std::sqrt(ratio);
  return signed_ecc_sq >= 0.0 ? DomainEllipse(major, minor) : DomainEllipse(minor, major);
}

double DomainEllipse::signed_ecc_sq() const noexcept {
  const double lo = std::min(rx_, ry_);
  const double hi = std::max(rx_, ry_);
  const double e = 1.0 - (lo / hi) * (lo / hi);
  return ry_ > rx_ ? -e : e;
}

DomainEllipse DomainEllipse::normalized() const {
  const double g = std::sqrt(rx_ * ry_);
  return DomainEllipse(rx_ / g, ry_ / g);
}

double elliptical_radius(double x, double y, const DomainEllipse& e) noexcept {
  const double u = x / e.semi_axis_x();
  const double v = y / e.semi_axis_y();
  return std::sqrt(u * u + v * v);
}

}  // namespace cornea
