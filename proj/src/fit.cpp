#include "cornea/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cornea/error.hpp"
#include "cornea/solver.hpp"
#include "cornea/special.hpp"

namespace cornea {
namespace {

constexpr double kRootLow = 1e-8;
constexpr double kRootHigh = 100.0;

struct Point {
  double x;
  double y;
};

// g(a) = kappa a - (I0(sqrt a) - 1), concave with g(0) = 0.
double root_function(double kappa, double a) {
  return kappa * a - special::bessel_i0_minus_one(std::sqrt(a));
}

bool touches_boundary(const SurfaceMesh& mesh, std::size_t ix, std::size_t iy) {
  if (ix == 0 || iy == 0 || ix + 1 >= mesh.n_x || iy + 1 >= mesh.n_y) return true;
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      if (!mesh.is_valid(ix + dx, iy + dy)) return true;
    }
  }
  return false;
}

// z ~ c0 + cx u + cy v + cxx u^2 + cxy u v + cyy v^2 + quartic terms, with
// (u, v) = (x - x0, y - y0) / window.
struct LocalFit {
  double c0, cx, cy, cxx, cxy, cyy;
};

LocalFit fit_local_polynomial(const SurfaceMesh& mesh, double x0, double y0, double window) {
  std::vector<std::array<double, 9>> rows;
  std::vector<double> rhs;
  for (std::size_t iy = 0; iy < mesh.n_y; ++iy) {
    const double v = (mesh.y(iy) - y0) / window;
    if (std::abs(v) > 1.0) continue;
    for (std::size_t ix = 0; ix < mesh.n_x; ++ix) {
      const double u = (mesh.x(ix) - x0) / window;
      if (u * u + v * v > 1.0 || !mesh.is_valid(ix, iy)) continue;
      rows.push_back({1.0, u, v, u * u, u * v, v * v, u * u * u * u, u * u * v * v,
                      v * v * v * v});
      rhs.push_back(mesh.at(ix, iy));
    }
  }
  if (rows.size() < 15) {
    throw ApexNotFound("too few valid nodes near the apex for a local fit (" +
                       std::to_string(rows.size()) + ")");
  }
  Eigen::MatrixXd A(rows.size(), 9);
  Eigen::VectorXd z(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < 9; ++j) A(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
    z(static_cast<Eigen::Index>(i)) = rhs[i];
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(z);
  const double w2 = window * window;
  return LocalFit{c(0), c(1) / window, c(2) / window, c(3) / w2, c(4) / w2, c(5) / w2};
}

// Points where the surface crosses `level` along grid edges between valid nodes.
std::vector<Point> level_crossings(const SurfaceMesh& mesh, double level) {
  std::vector<Point> pts;
  auto edge = [&](std::size_t ia, std::size_t ja, std::size_t ib, std::size_t jb) {
    if (!mesh.is_valid(ia, ja) || !mesh.is_valid(ib, jb)) return;
    const double za = mesh.at(ia, ja) - level;
    const double zb = mesh.at(ib, jb) - level;
    if ((za >= 0.0) == (zb >= 0.0)) return;
    const double t = za / (za - zb);
    pts.push_back({mesh.x(ia) + t * (mesh.x(ib) - mesh.x(ia)),
                   mesh.y(ja) + t * (mesh.y(jb) - mesh.y(ja))});
  };
  for (std::size_t iy = 0; iy < mesh.n_y; ++iy) {
    for (std::size_t ix = 0; ix < mesh.n_x; ++ix) {
      if (ix + 1 < mesh.n_x) edge(ix, iy, ix + 1, iy);
      if (iy + 1 < mesh.n_y) edge(ix, iy, ix, iy + 1);
    }
  }
  return pts;
}

// Zero crossings of the surface near the footprint rim, walking outward from
// the apex. Where the next node is missing, the crossing is extrapolated from
// the inward nodes (at most three pixels).
std::vector<Point> rim_crossings(const SurfaceMesh& mesh, const Apex& apex) {
  std::vector<Point> pts;
  constexpr std::array<std::array<int, 2>, 4> kDirs = {{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
  const auto nx = static_cast<long>(mesh.n_x);
  const auto ny = static_cast<long>(mesh.n_y);
  auto valid = [&](long i, long j) {
    return i >= 0 && j >= 0 && i < nx && j < ny &&
           mesh.is_valid(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  };
  auto zval = [&](long i, long j) {
    return mesh.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  };
  for (long j = 0; j < ny; ++j) {
    for (long i = 0; i < nx; ++i) {
      if (!valid(i, j)) continue;
      const double zp = zval(i, j);
      if (!(zp > 0.0)) continue;
      const double px = mesh.x(static_cast<std::size_t>(i));
      const double py = mesh.y(static_cast<std::size_t>(j));
      for (const auto& d : kDirs) {
        const double outward = (px - apex.x) * d[0] + (py - apex.y) * d[1];
        if (!(outward > 0.0)) continue;
        const double step_x = d[0] * mesh.spacing_x;
        const double step_y = d[1] * mesh.spacing_y;
        double t = 0.0;
        if (valid(i + d[0], j + d[1])) {
          const double zq = zval(i + d[0], j + d[1]);
          if (zq > 0.0) continue;
          t = zp / (zp - zq);
        } else {
          if (!valid(i - d[0], j - d[1])) continue;
          const double zi = zval(i - d[0], j - d[1]);
          if (!(zi > zp)) continue;
          t = zp / (zi - zp);
          if (valid(i - 2 * d[0], j - 2 * d[1])) {
            // Quadratic through the last three nodes; the profile bends at the rim.
            const double zii = zval(i - 2 * d[0], j - 2 * d[1]);
            const double d1 = 0.5 * (3.0 * zp - 4.0 * zi + zii);
            const double d2 = zp - 2.0 * zi + zii;
            const double disc = d1 * d1 - 2.0 * d2 * zp;
            if (d1 < 0.0 && disc >= 0.0) t = 2.0 * zp / (-d1 + std::sqrt(disc));
          }
          if (!(t >= 0.0) || t > 3.0) continue;
        }
        pts.push_back({px + t * step_x, py + t * step_y});
      }
    }
  }
  return pts;
}

}  // namespace

void ApexMeasurements::validate() const {
  if (!(max_deflection > 0.0) || !(central_radius > 0.0) || !(scale_radius > 0.0)) {
    throw DomainError("ApexMeasurements: all measurements must be positive");
  }
  if (!(max_deflection < scale_radius)) {
    throw DomainError("ApexMeasurements: max_deflection must be below scale_radius");
  }
}

double calibrate_b(double a, double rho0) {
  if (!(a > 0.0) || !(rho0 > 0.0)) throw DomainError("calibrate_b: inputs must be positive");
  return 2.0 * special::i0(std::sqrt(a)) / rho0;
}

double calibrate_a(double h00, double rho0) {
  if (!(h00 > 0.0) || !(rho0 > 0.0)) throw DomainError("calibrate_a: inputs must be positive");
  const double kappa = 0.5 * h00 * rho0;
  double lo = kRootLow;
  double hi = kRootHigh;
  const double g_lo = root_function(kappa, lo);
  const double g_hi = root_function(kappa, hi);
  if (!(g_lo > 0.0) || !(g_hi < 0.0)) {
    throw NoRoot("calibrate_a: no sign change on (1e-8, 100] for h0(0) rho(0) / 2 = " +
                 std::to_string(kappa));
  }
  // g is concave with g(0) = 0, so the sign change brackets the only positive root.
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (root_function(kappa, mid) > 0.0 ? lo : hi) = mid;
  }
  double a = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const double s = std::sqrt(a);
    const double slope = kappa - 0.5 * special::i1(s) / s;
    if (slope == 0.0) break;
    const double next = a - root_function(kappa, a) / slope;
    if (!(next > lo * 0.5) || !(next < hi * 2.0)) break;
    a = next;
  }
  return a;
}

ModelParams calibrate(const ApexMeasurements& apex) {
  apex.validate();
  const double h00 = apex.max_deflection / apex.scale_radius;
  const double rho0 = apex.central_radius / apex.scale_radius;
  const double a = calibrate_a(h00, rho0);
  return ModelParams(a, calibrate_b(a, rho0));
}

double ModelSurface::height(double x, double y) const {
  const double rho = elliptical_radius((x - center_x) / scale_radius,
                                       (y - center_y) / scale_radius, ellipse);
  return scale_radius * h0_value(params, rho);
}

std::pair<double, double> ModelSurface::gradient(double x, double y) const {
  const double u = (x - center_x) / scale_radius;
  const double v = (y - center_y) / scale_radius;
  const double rho = elliptical_radius(u, v, ellipse);
  if (rho == 0.0) return {0.0, 0.0};
  const double rx = ellipse.semi_axis_x();
  const double ry = ellipse.semi_axis_y();
  const double g = h0_slope(params, rho) / rho;
  return {g * u / (rx * rx), g * v / (ry * ry)};
}

SurfaceMesh evaluate_model(const ModelSurface& model, const SurfaceMesh& geometry,
                           Execution exec) {
  SurfaceMesh out = geometry.empty_like();
  const auto total = static_cast<std::ptrdiff_t>(geometry.n_x * geometry.n_y);
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    const auto node = static_cast<std::size_t>(k);
    if (!geometry.valid[node]) continue;
    out.z[node] = model.height(geometry.x(node % geometry.n_x), geometry.y(node / geometry.n_x));
    out.valid[node] = 1;
  }
  return out;
}

Apex locate_apex(const SurfaceMesh& mesh, double window_fraction) {
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    throw DomainError("locate_apex: window fraction must lie in (0, 1]");
  }
  mesh.validate();
  std::size_t best = 0;
  double zmax = -std::numeric_limits<double>::infinity();
  double zmin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < mesh.z.size(); ++k) {
    if (!mesh.valid[k]) continue;
    if (mesh.z[k] > zmax) {
      zmax = mesh.z[k];
      best = k;
    }
    zmin = std::min(zmin, mesh.z[k]);
  }
  if (!(zmax - zmin > 1e-12 * std::max(1.0, std::abs(zmax)))) {
    throw ApexNotFound("surface is flat");
  }
  const std::size_t bx = best % mesh.n_x;
  const std::size_t by = best / mesh.n_x;
  if (touches_boundary(mesh, bx, by)) {
    throw ApexNotFound("highest node lies on the footprint boundary");
  }

  double extent = 0.0;
  for (std::size_t iy = 0; iy < mesh.n_y; ++iy) {
    for (std::size_t ix = 0; ix < mesh.n_x; ++ix) {
      if (mesh.is_valid(ix, iy)) {
        extent = std::max(extent, std::hypot(mesh.x(ix) - mesh.x(bx), mesh.y(iy) - mesh.y(by)));
      }
    }
  }
  const double window =
      std::max(window_fraction * extent, 2.5 * std::max(mesh.spacing_x, mesh.spacing_y));

  double x0 = mesh.x(bx);
  double y0 = mesh.y(by);
  LocalFit fit{};
  for (int pass = 0; pass < 3; ++pass) {
    fit = fit_local_polynomial(mesh, x0, y0, window);
    const double h11 = 2.0 * fit.cxx, h12 = fit.cxy, h22 = 2.0 * fit.cyy;
    const double det = h11 * h22 - h12 * h12;
    if (!(h11 < 0.0) || !(det > 0.0)) {
      throw ApexNotFound("local fit has no interior maximum");
    }
    const double dx = (-fit.cx * h22 + fit.cy * h12) / det;
    const double dy = (fit.cx * h12 - fit.cy * h11) / det;
    if (std::hypot(dx, dy) > 0.5 * window) {
      throw ApexNotFound("fitted vertex lies outside the apex window");
    }
    x0 += dx;
    y0 += dy;
    if (std::hypot(dx, dy) < 1e-9 * window) break;
  }
  fit = fit_local_polynomial(mesh, x0, y0, window);
  return Apex{x0, y0, fit.c0, fit.cxx, fit.cxy, fit.cyy};
}

DomainEllipse estimate_ellipse(const SurfaceMesh& mesh, double level_fraction,
                               const Apex& apex) {
  if (!(level_fraction > 0.0 && level_fraction < 1.0)) {
    throw DomainError("estimate_ellipse: level fraction must lie in (0, 1)");
  }
  const auto pts = level_crossings(mesh, level_fraction * apex.height);
  if (pts.size() < 8) {
    throw DegenerateLevelSet("level curve has " + std::to_string(pts.size()) +
                             " points, need at least 8");
  }
  // Least squares on p x^2 + q y^2 = 1, p = 1/R1^2, q = 1/R2^2.
  double sxx = 0.0, sxy = 0.0, syy = 0.0, sx = 0.0, sy = 0.0;
  for (const Point& p : pts) {
    const double x2 = (p.x - apex.x) * (p.x - apex.x);
    const double y2 = (p.y - apex.y) * (p.y - apex.y);
    sxx += x2 * x2;
    sxy += x2 * y2;
    syy += y2 * y2;
    sx += x2;
    sy += y2;
  }
  const double det = sxx * syy - sxy * sxy;
  if (!(det > 0.0)) throw DegenerateLevelSet("level curve does not determine an ellipse");
  const double p = (sx * syy - sy * sxy) / det;
  const double q = (sy * sxx - sx * sxy) / det;
  if (!(p > 0.0) || !(q > 0.0)) {
    throw DegenerateLevelSet("level curve is not an ellipse around the apex");
  }
  return DomainEllipse(1.0 / std::sqrt(p), 1.0 / std::sqrt(q)).normalized();
}

DomainEllipse estimate_ellipse(const SurfaceMesh& mesh, double level_fraction) {
  return estimate_ellipse(mesh, level_fraction, locate_apex(mesh));
}

double estimate_scale_radius(const SurfaceMesh& mesh, const Apex& apex,
                             const DomainEllipse& ellipse) {
  // Root mean square elliptical radius of the rim crossings, i.e. the
  // geometric-mean semi-axis of the rim ellipse with the given shape.
  const auto rim = rim_crossings(mesh, apex);
  if (rim.size() >= 8) {
    double sum = 0.0;
    for (const Point& p : rim) {
      const double rho = elliptical_radius(p.x - apex.x, p.y - apex.y, ellipse);
      sum += rho * rho;
    }
    return std::sqrt(sum / static_cast<double>(rim.size()));
  }
  double scale = 0.0;
  for (std::size_t iy = 0; iy < mesh.n_y; ++iy) {
    for (std::size_t ix = 0; ix < mesh.n_x; ++ix) {
      if (mesh.is_valid(ix, iy)) {
        scale = std::max(scale, elliptical_radius(mesh.x(ix) - apex.x, mesh.y(iy) - apex.y, ellipse));
      }
    }
  }
  return scale;
}

ApexMeasurements measure_apex(const SurfaceMesh& mesh, const Apex& apex,
                              const DomainEllipse& ellipse, double scale_radius,
                              double window_fraction) {
  if (!(scale_radius > 0.0)) throw DomainError("measure_apex: scale radius must be positive");
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    throw DomainError("measure_apex: window fraction must lie in (0, 1]");
  }
  // z ~ c0 + c1 q + c2 q^2 + c3 q^3 + tx u + ty v, q = rho^2, with lengths
  // in units of the window.
  constexpr int kTerms = 6;
  const double window = window_fraction * scale_radius;
  std::vector<std::array<double, kTerms>> rows;
  std::vector<double> rhs;
  for (std::size_t iy = 0; iy < mesh.n_y; ++iy) {
    for (std::size_t ix = 0; ix < mesh.n_x; ++ix) {
      if (!mesh.is_valid(ix, iy)) continue;
      const double u = (mesh.x(ix) - apex.x) / window;
      const double v = (mesh.y(iy) - apex.y) / window;
      const double rho = elliptical_radius(u, v, ellipse);
      if (rho > 1.0) continue;
      const double q = rho * rho;
      rows.push_back({1.0, q, q * q, q * q * q, u, v});
      rhs.push_back(mesh.at(ix, iy));
    }
  }
  if (rows.size() < 4 * kTerms) {
    throw ApexNotFound("too few valid nodes for the apex profile fit (" +
                       std::to_string(rows.size()) + ")");
  }
  Eigen::MatrixXd A(static_cast<Eigen::Index>(rows.size()), kTerms);
  Eigen::VectorXd z(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    for (int j = 0; j < kTerms; ++j) A(r, j) = rows[i][static_cast<std::size_t>(j)];
    z(r) = rhs[i];
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(z);
  const double c1 = c(1) / (window * window);
  if (!(c1 < 0.0)) throw ApexNotFound("apex profile is not curved downward");
  return ApexMeasurements{c(0), 0.5 / -c1, scale_radius};
}

FitResult fit_mesh(const SurfaceMesh& mesh, const FitOptions& options) {
  const Apex apex = locate_apex(mesh, options.apex_window_fraction);
  const DomainEllipse ellipse = estimate_ellipse(mesh, options.level_fraction, apex);
  const double scale = estimate_scale_radius(mesh, apex, ellipse);
  const ApexMeasurements measured =
      measure_apex(mesh, apex, ellipse, scale, options.profile_window_fraction);
  const ModelParams params = calibrate(measured);

  FitResult result{params, ellipse, scale, apex.x, apex.y, measured, 0.0, 0.0, 0.0, 0.0, 0, 0};
  const ModelSurface model = result.model();

  const SurfaceMesh fitted = evaluate_model(model, mesh);
  double abs_sum = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < mesh.z.size(); ++k) {
    if (!mesh.valid[k]) continue;
    abs_sum += std::abs(mesh.z[k] - fitted.z[k]);
    ++count;
  }
  result.n_points_used = count;
  result.mean_abs_error_mm = abs_sum / static_cast<double>(count);
  result.mean_rel_error = result.mean_abs_error_mm / measured.max_deflection;

  const AxialOptions axial{apex.x, apex.y, options.gradient_floor, options.apex_disk * scale};
  const SurfaceMesh d_data = axial_distance_map(mesh, axial);
  const SurfaceMesh d_model = axial_distance_map(model, mesh, axial);
  double d_abs = 0.0;
  double d_sum = 0.0;
  std::size_t d_count = 0;
  for (std::size_t k = 0; k < mesh.z.size(); ++k) {
    if (!d_data.valid[k] || !d_model.valid[k]) continue;
    d_abs += std::abs(d_data.z[k] - d_model.z[k]);
    d_sum += d_data.z[k];
    ++d_count;
  }
  result.n_axial_points = d_count;
  if (d_count > 0) {
    result.axial_mean_abs_error_mm = d_abs / static_cast<double>(d_count);
    result.axial_mean_rel_error = d_abs / d_sum;
  }
  return result;
}

}  // namespace cornea
