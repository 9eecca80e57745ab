#include "cornea/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cornea/error.hpp"
#include "cornea/solver.hpp"

namespace cornea {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform_draw(std::uint64_t seed, std::uint64_t j) noexcept {
  const std::uint64_t w = splitmix64(seed + j * 0x9E3779B97F4A7C15ULL);
  return static_cast<double>(w >> 11) * 0x1.0p-53;
}

double normal_deviate(std::uint64_t seed, std::uint64_t node) noexcept {
  const double u0 = uniform_draw(seed, 2 * node);
  const double u1 = uniform_draw(seed, 2 * node + 1);
  return std::sqrt(-2.0 * std::log1p(-u0)) * std::cos(2.0 * std::numbers::pi * u1);
}

SurfaceMesh generate_synthetic(const SynthSpec& spec, Execution exec) {
  if (!(spec.scale_radius > 0.0)) throw DomainError("generate_synthetic: scale_radius must be positive");
  if (!(spec.noise_sigma >= 0.0)) throw DomainError("generate_synthetic: noise_sigma must be >= 0");
  if (spec.n_x < 5 || spec.n_y < 5) throw DomainError("generate_synthetic: need at least 5x5 nodes");

  const double scale = spec.scale_radius;
  const DomainEllipse& ell = spec.ellipse;
  const double pixel = 2.0 * scale * std::max(ell.semi_axis_x(), ell.semi_axis_y()) /
                       static_cast<double>(std::min(spec.n_x, spec.n_y) - 3);
  SurfaceMesh mesh(spec.n_x, spec.n_y, pixel, pixel,
                   -0.5 * static_cast<double>(spec.n_x - 1) * pixel,
                   -0.5 * static_cast<double>(spec.n_y - 1) * pixel);

  const auto total = static_cast<std::ptrdiff_t>(spec.n_x * spec.n_y);
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    const auto node = static_cast<std::size_t>(k);
    const std::size_t ix = node % spec.n_x;
    const std::size_t iy = node / spec.n_x;
    const double rho = elliptical_radius(mesh.x(ix) / scale, mesh.y(iy) / scale, ell);
    if (rho > 1.0) continue;
    double z = scale * h0_value(spec.params, rho);
    if (spec.noise_sigma > 0.0) z += spec.noise_sigma * normal_deviate(spec.seed, node);
    mesh.z[node] = z;
    mesh.valid[node] = 1;
  }
  return mesh;
}

SurfaceMesh generate_spherical_cap(double radius, double half_width, std::size_t n) {
  if (!(radius > 0.0) || !(half_width > 0.0) || !(half_width < radius)) {
    throw DomainError("generate_spherical_cap: need 0 < half_width < radius");
  }
  if (n < 5) throw DomainError("generate_spherical_cap: need at least 5 nodes per side");
  const double pixel = 2.0 * half_width / static_cast<double>(n - 3);
  const double origin = -0.5 * static_cast<double>(n - 1) * pixel;
  SurfaceMesh mesh(n, n, pixel, pixel, origin, origin);
  const double rim = std::sqrt(radius * radius - half_width * half_width);
  for (std::size_t iy = 0; iy < n; ++iy) {
    for (std::size_t ix = 0; ix < n; ++ix) {
      const double r2 = mesh.x(ix) * mesh.x(ix) + mesh.y(iy) * mesh.y(iy);
      if (r2 > half_width * half_width) continue;
      mesh.set(ix, iy, std::sqrt(radius * radius - r2) - rim);
    }
  }
  return mesh;
}

}  // namespace cornea
