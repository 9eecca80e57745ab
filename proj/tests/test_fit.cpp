#include <cmath>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>

#include "doctest.h"
#include "oracles.hpp"

#include "cornea/error.hpp"
#include "cornea/fit.hpp"
#include "cornea/solver.hpp"
#include "cornea/synthetic.hpp"

using namespace cornea;
using boost::math::cyl_bessel_i;

namespace {

// Forward apex quantities of the zeroth-order surface, nondimensional.
double forward_h00(double a, double b) { return b / a * (1.0 - 1.0 / cyl_bessel_i(0, std::sqrt(a))); }
double forward_rho0(double a, double b) { return 2.0 * cyl_bessel_i(0, std::sqrt(a)) / b; }

SurfaceMesh synthetic(double a, double b, double ecc_sq, double sigma = 0.0, std::uint64_t seed = 0) {
  SynthSpec spec;
  spec.params = ModelParams(a, b);
  spec.ellipse = DomainEllipse::from_signed_ecc_sq(ecc_sq);
  spec.noise_sigma = sigma;
  spec.seed = seed;
  return generate_synthetic(spec);
}

SurfaceMesh rescaled(const SurfaceMesh& mesh, double factor) {
  SurfaceMesh out = mesh;
  out.spacing_x *= factor;
  out.spacing_y *= factor;
  out.origin_x *= factor;
  out.origin_y *= factor;
  for (std::size_t k = 0; k < out.z.size(); ++k) {
    if (out.valid[k]) out.z[k] *= factor;
  }
  return out;
}

struct FieldDiff {
  double mean = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

FieldDiff compare(const SurfaceMesh& x, const SurfaceMesh& y) {
  FieldDiff d;
  for (std::size_t k = 0; k < x.z.size(); ++k) {
    if (!x.valid[k] || !y.valid[k]) continue;
    const double e = std::abs(x.z[k] - y.z[k]);
    d.mean += e;
    d.max = std::max(d.max, e);
    ++d.count;
  }
  if (d.count > 0) d.mean /= static_cast<double>(d.count);
  return d;
}

}  // namespace

TEST_CASE("domain ellipse") {
  const DomainEllipse unit = DomainEllipse::circle();
  CHECK(elliptical_radius(0.3, 0.4, unit) == 0.5);
  CHECK(elliptical_radius(-0.6, 0.8, unit) == std::hypot(-0.6, 0.8));

  const DomainEllipse e(1.2, 0.8);
  CHECK(elliptical_radius(1.2, 0.0, e) == 1.0);
  CHECK(elliptical_radius(0.0, -0.8, e) == 1.0);
  for (double c : {0.25, 0.5, 0.9}) {
    for (int k = 0; k < 16; ++k) {
      const double t = k * 0.39269908169872414;
      CHECK(elliptical_radius(c * 1.2 * std::cos(t), c * 0.8 * std::sin(t), e) ==
            doctest::Approx(c).epsilon(1e-14));
    }
  }
  CHECK(e.signed_ecc_sq() == doctest::Approx(1.0 - (0.8 / 1.2) * (0.8 / 1.2)).epsilon(1e-14));
  CHECK(DomainEllipse(0.8, 1.2).signed_ecc_sq() == doctest::Approx(-e.signed_ecc_sq()).epsilon(1e-14));

  for (double s : {0.0, 0.0234, -0.0214, 0.5}) {
    const DomainEllipse f = DomainEllipse::from_signed_ecc_sq(s);
    CHECK(f.signed_ecc_sq() == doctest::Approx(s).epsilon(1e-12));
    CHECK(f.semi_axis_x() * f.semi_axis_y() == doctest::Approx(1.0).epsilon(1e-14));
  }
  const DomainEllipse n = DomainEllipse(3.0, 12.0).normalized();
  CHECK(n.semi_axis_x() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(n.semi_axis_y() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(DomainEllipse(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(DomainEllipse::from_signed_ecc_sq(1.0), DomainError);
}

TEST_CASE("calibrate_b") {
  const double rho0 = forward_rho0(2.0, 2.0);
  CHECK(calibrate_b(2.0, rho0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(calibrate_b(2.0, 2.0 * rho0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(calibrate_b(2.07883, forward_rho0(2.07883, 2.76741)) ==
        doctest::Approx(2.76741).epsilon(1e-12));
  CHECK_THROWS_AS(calibrate_b(0.0, 1.0), DomainError);
}

TEST_CASE("calibrate_a") {
  CHECK(calibrate_a(forward_h00(2.0, 2.0), forward_rho0(2.0, 2.0)) ==
        doctest::Approx(2.0).epsilon(1e-8));
  CHECK(calibrate_a(forward_h00(2.07883, 2.76741), forward_rho0(2.07883, 2.76741)) ==
        doctest::Approx(2.07883).epsilon(1e-6));
  // kappa = h00 rho0 / 2 <= 1/4 leaves no positive root.
  CHECK_THROWS_AS(calibrate_a(0.1, 1.0), NoRoot);
  CHECK_THROWS_AS(calibrate_a(-0.1, 1.0), DomainError);
}

TEST_CASE("calibration inverts the forward formulas") {
  for (double a = 0.5; a <= 5.0; a += 0.25) {
    const double bmax = theorem1_b_max(a);
    for (double frac : {0.05, 0.3, 0.6, 0.95}) {
      const double b = frac * bmax;
      CAPTURE(a);
      CAPTURE(b);
      const ModelParams p =
          calibrate(ApexMeasurements{forward_h00(a, b) * 6.0, forward_rho0(a, b) * 6.0, 6.0});
      CHECK(oracle::rel_err(p.a(), a) < 1e-8);
      CHECK(oracle::rel_err(p.b(), b) < 1e-8);
    }
  }
}

TEST_CASE("root moves continuously with the apex height") {
  const double h00 = 1.01 * forward_h00(2.0, 2.0);
  const double rho0 = forward_rho0(2.0, 2.0);
  const double kappa = 0.5 * h00 * rho0;
  // Dense scan of g(a) = kappa a - (I0(sqrt a) - 1) for its first sign change.
  double root = 0.0;
  for (int i = 1; i <= 200000; ++i) {
    const double a = i * 5e-5;
    if (kappa * a - (cyl_bessel_i(0, std::sqrt(a)) - 1.0) < 0.0) {
      root = a - 2.5e-5;
      break;
    }
  }
  const double got = calibrate_a(h00, rho0);
  CHECK(std::abs(got - root) <= 2.5e-5);
  CHECK(std::abs(got - 2.0) / 2.0 < 0.1);
}

TEST_CASE("apex measurement validation") {
  CHECK_THROWS_AS(calibrate(ApexMeasurements{0.0, 8.0, 6.0}), DomainError);
  CHECK_THROWS_AS(calibrate(ApexMeasurements{7.0, 8.0, 6.0}), DomainError);
  CHECK_THROWS_AS(calibrate(ApexMeasurements{1.0, -8.0, 6.0}), DomainError);
}

TEST_CASE("model surface gradient matches finite differences") {
  const ModelSurface m{ModelParams(1.94398, 2.27534), DomainEllipse::from_signed_ecc_sq(0.0234),
                       6.0, 0.3, -0.2};
  for (auto [x, y] : {std::pair{1.0, 2.0}, std::pair{-3.0, 0.5}, std::pair{2.5, -4.0}}) {
    const auto [gx, gy] = m.gradient(x, y);
    CHECK(gx == doctest::Approx(oracle::central_difference([&](double t) { return m.height(t, y); }, x, 1e-5)).epsilon(1e-7));
    CHECK(gy == doctest::Approx(oracle::central_difference([&](double t) { return m.height(x, t); }, y, 1e-5)).epsilon(1e-7));
  }
  const auto [gx0, gy0] = m.gradient(0.3, -0.2);
  CHECK(gx0 == 0.0);
  CHECK(gy0 == 0.0);
}

TEST_CASE("apex location") {
  const SurfaceMesh mesh = synthetic(2.07883, 2.76741, 0.0);
  const Apex apex = locate_apex(mesh);
  CHECK(std::abs(apex.x) < 1e-6);
  CHECK(std::abs(apex.y) < 1e-6);
  CHECK(apex.height == doctest::Approx(6.0 * forward_h00(2.07883, 2.76741)).epsilon(1e-6));
  // Central radius in mm is S rho0; the fit returns z ~ -dx^2 / (2 rho).
  CHECK(-0.5 / apex.cxx == doctest::Approx(6.0 * forward_rho0(2.07883, 2.76741)).epsilon(1e-4));

  SUBCASE("maximum on the boundary") {
    SurfaceMesh tilted(21, 21, 1.0, 1.0, 0.0, 0.0);
    for (std::size_t iy = 0; iy < 21; ++iy)
      for (std::size_t ix = 0; ix < 21; ++ix) tilted.set(ix, iy, 0.1 * static_cast<double>(ix));
    CHECK_THROWS_AS(locate_apex(tilted), ApexNotFound);
  }
  SUBCASE("a pit has no maximum") {
    SurfaceMesh pit = mesh;
    for (std::size_t k = 0; k < pit.z.size(); ++k) {
      if (pit.valid[k]) pit.z[k] = 20.0 - pit.z[k];
    }
    CHECK_THROWS_AS(locate_apex(pit), ApexNotFound);
  }
}

TEST_CASE("apex measurements from the radial profile") {
  const SurfaceMesh mesh = synthetic(1.94398, 2.27534, 0.0234);
  const Apex apex = locate_apex(mesh);
  const DomainEllipse ellipse = estimate_ellipse(mesh, 0.5, apex);
  const double scale = estimate_scale_radius(mesh, apex, ellipse);
  CHECK(scale == doctest::Approx(6.0).epsilon(1e-4));
  const ApexMeasurements m = measure_apex(mesh, apex, ellipse, scale);
  CHECK(m.scale_radius == scale);
  CHECK(m.max_deflection == doctest::Approx(6.0 * forward_h00(1.94398, 2.27534)).epsilon(1e-6));
  CHECK(m.central_radius == doctest::Approx(6.0 * forward_rho0(1.94398, 2.27534)).epsilon(1e-4));
  CHECK_THROWS_AS(measure_apex(mesh, apex, ellipse, scale, 0.0), DomainError);
  CHECK_THROWS_AS(measure_apex(mesh, apex, ellipse, 0.01), ApexNotFound);
}

TEST_CASE("ellipse recovery") {
  CHECK(std::abs(estimate_ellipse(synthetic(2.07883, 2.76741, 0.0)).signed_ecc_sq()) < 1e-3);
  CHECK(oracle::rel_err(estimate_ellipse(synthetic(1.94398, 2.27534, 0.0234)).signed_ecc_sq(), 0.0234) < 0.1);
  CHECK(estimate_ellipse(synthetic(2.07883, 2.76741, -0.0214)).signed_ecc_sq() < 0.0);

  SurfaceMesh tiny(3, 3, 1.0, 1.0, -1.0, -1.0);
  for (std::size_t k = 0; k < 9; ++k) tiny.set(k % 3, k / 3, k == 4 ? 1.0 : 0.0);
  const Apex apex{0.0, 0.0, 1.0, -1.0, 0.0, -1.0};
  CHECK_THROWS_AS(estimate_ellipse(tiny, 0.5, apex), DegenerateLevelSet);
  CHECK_THROWS_AS(estimate_ellipse(tiny, 1.5, apex), DomainError);
}

TEST_CASE("noiseless fit round trip") {
  SUBCASE("circular") {
    const FitResult f = fit_mesh(synthetic(2.07883, 2.76741, 0.0));
    CHECK(oracle::rel_err(f.params.a(), 2.07883) < 0.01);
    CHECK(oracle::rel_err(f.params.b(), 2.76741) < 0.01);
    CHECK(std::abs(f.ellipse.signed_ecc_sq()) < 1e-3);
    CHECK(f.mean_abs_error_mm <= 1e-4);
    CHECK(f.mean_rel_error >= 0.0);
    CHECK(f.n_points_used <= 123u * 123u);
  }
  SUBCASE("oblate") {
    const FitResult f = fit_mesh(synthetic(1.94398, 2.27534, 0.0234));
    CHECK(oracle::rel_err(f.params.a(), 1.94398) < 0.01);
    CHECK(oracle::rel_err(f.params.b(), 2.27534) < 0.01);
    CHECK(std::abs(f.ellipse.signed_ecc_sq() - 0.0234) < 1e-3);
    CHECK(f.mean_abs_error_mm <= 1e-3);
    CHECK(f.axial_mean_abs_error_mm <= 1e-3);
    CHECK(f.n_axial_points > 0);
  }
  SUBCASE("prolate") {
    const FitResult f = fit_mesh(synthetic(2.07883, 2.76741, -0.0214));
    CHECK(oracle::rel_err(f.params.a(), 2.07883) < 0.01);
    CHECK(oracle::rel_err(f.params.b(), 2.76741) < 0.01);
    CHECK(std::abs(f.ellipse.signed_ecc_sq() + 0.0214) < 1e-3);
  }
}

TEST_CASE("noisy fit lands on the noise floor") {
  const FitResult f = fit_mesh(synthetic(2.07883, 2.76741, 0.0, 0.01, 11));
  CHECK(f.mean_abs_error_mm >= 0.005);
  CHECK(f.mean_abs_error_mm <= 0.02);
}

TEST_CASE("relative error is unit invariant") {
  const SurfaceMesh mm = synthetic(1.94398, 2.27534, 0.0234, 0.01, 3);
  const FitResult a = fit_mesh(mm);
  const FitResult b = fit_mesh(rescaled(mm, 1000.0));
  // Equal up to rounding in which nodes fall inside the apex windows.
  CHECK(b.mean_rel_error == doctest::Approx(a.mean_rel_error).epsilon(1e-4));
  CHECK(b.mean_abs_error_mm == doctest::Approx(1000.0 * a.mean_abs_error_mm).epsilon(1e-4));
  CHECK(b.params.a() == doctest::Approx(a.params.a()).epsilon(1e-4));
  CHECK(b.scale_radius == doctest::Approx(1000.0 * a.scale_radius).epsilon(1e-4));
}

TEST_CASE("axial distance of a sphere") {
  const SurfaceMesh cap = generate_spherical_cap(7.8, 4.0, 123);
  AxialOptions opt;
  opt.apex_disk_radius = 0.05 * 4.0;
  const SurfaceMesh d = axial_distance_map(cap, opt);
  CHECK(d.valid_count() > 10000);
  for (std::size_t k = 0; k < d.z.size(); ++k) {
    if (d.valid[k]) CHECK(std::abs(d.z[k] - 7.8) / 7.8 <= 1e-6);
  }
  // Without a disk only the zero-gradient apex node is masked.
  const SurfaceMesh full = axial_distance_map(cap, AxialOptions{});
  CHECK_FALSE(full.is_valid(61, 61));
  CHECK(full.is_valid(62, 61));
}

TEST_CASE("axial distance of the model agrees with the mesh") {
  SynthSpec spec;
  spec.params = ModelParams(1.94398, 2.27534);
  spec.ellipse = DomainEllipse::from_signed_ecc_sq(0.0234);
  const SurfaceMesh mesh = generate_synthetic(spec);
  const ModelSurface model{spec.params, spec.ellipse, spec.scale_radius};
  AxialOptions opt;
  opt.apex_disk_radius = 0.05 * spec.scale_radius;
  const FieldDiff diff = compare(axial_distance_map(mesh, opt), axial_distance_map(model, mesh, opt));
  CHECK(diff.count > 10000);
  CHECK(diff.mean <= 1e-3);

  const SurfaceMesh apex_masked = axial_distance_map(model, mesh, AxialOptions{});
  CHECK_FALSE(apex_masked.is_valid(61, 61));
}
