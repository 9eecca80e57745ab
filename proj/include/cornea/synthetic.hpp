#pragma once

#include <cstdint>

#include "cornea/ellipse.hpp"
#include "cornea/execution.hpp"
#include "cornea/kernel.hpp"
#include "cornea/mesh.hpp"

namespace cornea {

// Noise stream shared by every implementation of the generator.
//
// splitmix64(x):  z = x + 0x9E3779B97F4A7C15
//                 z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//                 z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//                 return z ^ (z >> 31)
//
// The j-th draw (j = 0, 1, ...) of the stream for `seed` is
// splitmix64(seed + j * 0x9E3779B97F4A7C15), i.e. the (j+1)-th output of a
// SplitMix64 generator initialised with `seed`. A draw becomes a uniform
// u = (w >> 11) * 2^-53 in [0, 1). Mesh node k (row-major, k = iy*n_x + ix)
// consumes draws 2k and 2k+1 and receives the Box-Muller deviate
// sqrt(-2 ln(1 - u0)) * cos(2 pi u1), scaled by noise_sigma.
std::uint64_t splitmix64(std::uint64_t x) noexcept;
double uniform_draw(std::uint64_t seed, std::uint64_t j) noexcept;
double normal_deviate(std::uint64_t seed, std::uint64_t node) noexcept;

struct SynthSpec {
  ModelParams params{2.0, 2.0};
  double scale_radius = 6.0;  // mm
  DomainEllipse ellipse = DomainEllipse::circle();
  double noise_sigma = 0.0;   // mm
  std::uint64_t seed = 0;
  std::size_t n_x = 123;
  std::size_t n_y = 123;
};

/// Apex-centred mesh z = S h0(elliptical_radius(x/S, y/S)) + noise inside the
/// footprint ellipse, invalid outside. Square pixels of size
/// 2 S max(R1, R2) / (min(n_x, n_y) - 3) leave one invalid ring around the
/// footprint.
SurfaceMesh generate_synthetic(const SynthSpec& spec,
                               Execution exec = Execution::parallel);

/// Spherical cap of the given radius over the disk |(x, y)| <= half_width,
/// sampled on an n x n apex-centred grid; the rim sits at z = 0.
SurfaceMesh generate_spherical_cap(double radius, double half_width, std::size_t n);

}  // namespace cornea
