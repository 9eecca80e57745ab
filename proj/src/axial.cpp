#include <array>
#include <cmath>
#include <limits>

#include "cornea/fit.hpp"

namespace cornea {
namespace {

// d = r sqrt(1 + 1/g^2); NaN marks an undefined value.
double axial_value(double dx, double dy, double gx, double gy, const AxialOptions& o) {
  const double r = std::hypot(dx, dy);
  const double g2 = gx * gx + gy * gy;
  if (std::sqrt(g2) < o.gradient_floor || r < o.apex_disk_radius) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return r * std::sqrt(1.0 + 1.0 / g2);
}

// Five-point first-derivative stencils (times 12h), keyed by the offset of the
// first node, most centred first.
struct Stencil {
  int first;
  std::array<double, 5> w;
};
constexpr std::array<Stencil, 5> kStencils = {{
    {-2, {1.0, -8.0, 0.0, 8.0, -1.0}},
    {-3, {-1.0, 6.0, -18.0, 10.0, 3.0}},
    {-1, {-3.0, -10.0, 18.0, -6.0, 1.0}},
    {-4, {3.0, -16.0, 36.0, -48.0, 25.0}},
    {0, {-25.0, 48.0, -36.0, 16.0, -3.0}},
}};

// Fourth-order derivative along one axis from the first stencil whose nodes
// are all valid; second-order central difference if none fits. NaN otherwise.
double derivative(const SurfaceMesh& mesh, std::size_t ix, std::size_t iy, bool along_x) {
  const auto n = static_cast<long>(along_x ? mesh.n_x : mesh.n_y);
  const auto i = static_cast<long>(along_x ? ix : iy);
  const double h = along_x ? mesh.spacing_x : mesh.spacing_y;
  auto valid = [&](long j) {
    if (j < 0 || j >= n) return false;
    const auto u = static_cast<std::size_t>(j);
    return along_x ? mesh.is_valid(u, iy) : mesh.is_valid(ix, u);
  };
  auto z = [&](long j) {
    const auto u = static_cast<std::size_t>(j);
    return along_x ? mesh.at(u, iy) : mesh.at(ix, u);
  };
  for (const Stencil& st : kStencils) {
    bool ok = true;
    for (long k = 0; k < 5 && ok; ++k) ok = valid(i + st.first + k);
    if (!ok) continue;
    double sum = 0.0;
    for (long k = 0; k < 5; ++k) sum += st.w[static_cast<std::size_t>(k)] * z(i + st.first + k);
    return sum / (12.0 * h);
  }
  if (valid(i - 1) && valid(i + 1)) return (z(i + 1) - z(i - 1)) / (2.0 * h);
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

SurfaceMesh axial_distance_map(const SurfaceMesh& mesh, const AxialOptions& options,
                               Execution exec) {
  SurfaceMesh out = mesh.empty_like();
  const auto total = static_cast<std::ptrdiff_t>(mesh.n_x * mesh.n_y);
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    const auto node = static_cast<std::size_t>(k);
    const std::size_t ix = node % mesh.n_x;
    const std::size_t iy = node / mesh.n_x;
    if (!mesh.is_valid(ix, iy)) continue;
    const double gx = derivative(mesh, ix, iy, true);
    const double gy = derivative(mesh, ix, iy, false);
    if (std::isnan(gx) || std::isnan(gy)) continue;
    const double d = axial_value(mesh.x(ix) - options.center_x, mesh.y(iy) - options.center_y,
                                 gx, gy, options);
    if (std::isnan(d)) continue;
    out.z[node] = d;
    out.valid[node] = 1;
  }
  return out;
}

SurfaceMesh axial_distance_map(const ModelSurface& model, const SurfaceMesh& geometry,
                               const AxialOptions& options, Execution exec) {
  SurfaceMesh out = geometry.empty_like();
  const auto total = static_cast<std::ptrdiff_t>(geometry.n_x * geometry.n_y);
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    const auto node = static_cast<std::size_t>(k);
    if (!geometry.valid[node]) continue;
    const double x = geometry.x(node % geometry.n_x);
    const double y = geometry.y(node / geometry.n_x);
    const auto [gx, gy] = model.gradient(x, y);
    const double d = axial_value(x - model.center_x, y - model.center_y, gx, gy, options);
    if (std::isnan(d)) continue;
    out.z[node] = d;
    out.valid[node] = 1;
  }
  return out;
}

}  // namespace cornea
