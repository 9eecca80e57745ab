#pragma once

#include <cstddef>
#include <utility>

#include "cornea/ellipse.hpp"
#include "cornea/execution.hpp"
#include "cornea/kernel.hpp"
#include "cornea/mesh.hpp"

namespace cornea {

/// Apex measurements in millimetres: sagitta above the rim, central radius of
/// curvature, and the length used to nondimensionalize both.
struct ApexMeasurements {
  double max_deflection;
  double central_radius;
  double scale_radius;

  /// Throws DomainError unless all positive and max_deflection < scale_radius.
  void validate() const;
};

/// b = 2 I0(sqrt a) / rho0 (rho0 nondimensional).
double calibrate_b(double a, double rho0);

/// Smallest positive root of (1/2) h00 rho0 a - I0(sqrt a) + 1 = 0, bracketed
/// on (1e-8, 100] and polished with Newton. Throws NoRoot without a sign change.
double calibrate_a(double h00, double rho0);

ModelParams calibrate(const ApexMeasurements& apex);

/// The fitted zeroth-order surface z = S h0(elliptical_radius((x-cx)/S, (y-cy)/S)).
struct ModelSurface {
  ModelParams params;
  DomainEllipse ellipse;
  double scale_radius;
  double center_x = 0.0;
  double center_y = 0.0;

  double height(double x, double y) const;
  /// (dz/dx, dz/dy), dimensionless.
  std::pair<double, double> gradient(double x, double y) const;
};

/// Model heights at the valid nodes of `geometry`.
SurfaceMesh evaluate_model(const ModelSurface& model, const SurfaceMesh& geometry,
                           Execution exec = Execution::parallel);

/// Located apex: vertex position and height of a local polynomial fit, with
/// the quadratic coefficients z ~ c0 + cxx dx^2 + cxy dx dy + cyy dy^2.
struct Apex {
  double x;
  double y;
  double height;
  double cxx;
  double cxy;
  double cyy;
};

/// Fits z ~ quadratic + quartic terms over nodes within window_fraction of the
/// footprint radius around the highest node. Throws ApexNotFound when the
/// highest node touches the footprint boundary, the data are flat, or the fit
/// has no interior maximum.
Apex locate_apex(const SurfaceMesh& mesh, double window_fraction = 0.3);

/// Centred, axis-aligned least-squares ellipse through the level curve at
/// level_fraction of the apex height, normalized to unit geometric-mean
/// semi-axis. Throws DegenerateLevelSet with fewer than 8 level-curve points.
DomainEllipse estimate_ellipse(const SurfaceMesh& mesh, double level_fraction = 0.5);
DomainEllipse estimate_ellipse(const SurfaceMesh& mesh, double level_fraction,
                               const Apex& apex);

/// Footprint size: root mean square elliptical radius (with the given shape)
/// of the rim zero crossings around the apex; the largest elliptical extent
/// of the valid nodes when too few crossings exist.
double estimate_scale_radius(const SurfaceMesh& mesh, const Apex& apex,
                             const DomainEllipse& ellipse);

/// Apex height and central radius of curvature from a least-squares fit of
/// z ~ c0 + c1 q + c2 q^2 + c3 q^3 + tilt, q = rho^2, over the nodes with
/// elliptical radius rho <= window_fraction * scale_radius around the apex.
/// The central radius is 1 / |2 c1|. Throws ApexNotFound if c1 >= 0.
ApexMeasurements measure_apex(const SurfaceMesh& mesh, const Apex& apex,
                              const DomainEllipse& ellipse, double scale_radius,
                              double window_fraction = 0.9);

struct FitOptions {
  double level_fraction = 0.5;
  double apex_window_fraction = 0.3;     // vertex location
  double profile_window_fraction = 0.9;  // height and curvature
  double apex_disk = 0.05;  // nondimensional radius excluded from axial errors
  double gradient_floor = 1e-8;
};

struct FitResult {
  ModelParams params;
  DomainEllipse ellipse;
  double scale_radius;  // mm
  double center_x;      // mm
  double center_y;      // mm
  ApexMeasurements apex;
  double mean_abs_error_mm;
  double mean_rel_error;  // relative to apex.max_deflection
  double axial_mean_abs_error_mm;
  double axial_mean_rel_error;  // relative to the mean measured axial distance
  std::size_t n_points_used;
  std::size_t n_axial_points;

  ModelSurface model() const {
    return ModelSurface{params, ellipse, scale_radius, center_x, center_y};
  }
};

FitResult fit_mesh(const SurfaceMesh& mesh, const FitOptions& options = {});

struct AxialOptions {
  double center_x = 0.0;
  double center_y = 0.0;
  double gradient_floor = 1e-8;
  double apex_disk_radius = 0.0;  // mm; nodes closer to the axis are masked
};

/// Axial distance d = r sqrt(1 + 1/|grad z|^2) from fourth-order finite
/// differences of the mesh (off-centre near invalid nodes). Nodes lacking
/// valid neighbours, with |grad z| below the floor, or inside the apex disk are
/// left invalid.
SurfaceMesh axial_distance_map(const SurfaceMesh& mesh, const AxialOptions& options,
                               Execution exec = Execution::parallel);

/// Same for the analytic model at the valid nodes of `geometry`; the axis is
/// the model centre and options.center_x/center_y are ignored.
SurfaceMesh axial_distance_map(const ModelSurface& model, const SurfaceMesh& geometry,
                               const AxialOptions& options,
                               Execution exec = Execution::parallel);

}  // namespace cornea
