#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace cornea {

/// Gridded elevation data in millimetres with a validity mask. Node (ix, iy)
/// sits at (origin_x + ix*spacing_x, origin_y + iy*spacing_y); storage is
/// row-major with rows along y. Invalid nodes hold NaN.
struct SurfaceMesh {
  std::size_t n_x = 0;
  std::size_t n_y = 0;
  double spacing_x = 1.0;
  double spacing_y = 1.0;
  double origin_x = 0.0;
  double origin_y = 0.0;
  std::vector<double> z;
  std::vector<std::uint8_t> valid;

  SurfaceMesh() = default;
  /// All nodes start invalid.
  SurfaceMesh(std::size_t nx, std::size_t ny, double dx, double dy, double x0,
              double y0);

  std::size_t index(std::size_t ix, std::size_t iy) const noexcept { return iy * n_x + ix; }
  double x(std::size_t ix) const noexcept { return origin_x + static_cast<double>(ix) * spacing_x; }
  double y(std::size_t iy) const noexcept { return origin_y + static_cast<double>(iy) * spacing_y; }
  bool is_valid(std::size_t ix, std::size_t iy) const noexcept { return valid[index(ix, iy)] != 0; }
  double at(std::size_t ix, std::size_t iy) const noexcept { return z[index(ix, iy)]; }

  /// Stores a finite value and marks the node valid.
  void set(std::size_t ix, std::size_t iy, double value);
  void invalidate(std::size_t ix, std::size_t iy);

  std::size_t valid_count() const noexcept;

  /// Same geometry, every node invalid.
  SurfaceMesh empty_like() const;

  /// Throws DomainError unless dimensions are at least 3x3, spacings are
  /// positive, valid values are finite, and some valid node is interior.
  void validate() const;
};

// Text format: a header line "rows cols spacing_x spacing_y origin_x origin_y"
// followed by `rows` lines of `cols` whitespace-separated values, each printed
// with 17 significant digits or as the token `nan` for invalid nodes.
void write_mesh(const SurfaceMesh& mesh, std::ostream& out);
void write_mesh(const SurfaceMesh& mesh, const std::filesystem::path& path);
SurfaceMesh read_mesh(std::istream& in);
SurfaceMesh read_mesh(const std::filesystem::path& path);

}  // namespace cornea
