#include "cornea/mesh.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>

#include "cornea/error.hpp"

namespace cornea {
namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> split(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

double parse_real(const Token& tok, std::size_t line) {
  double value = 0.0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || std::isnan(value) || std::isinf(value)) {
    throw ParseError("expected a finite number, got '" + std::string(tok.text) + "'",
                     line, tok.column);
  }
  return value;
}

std::size_t parse_count(const Token& tok, std::size_t line) {
  std::size_t value = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("expected a nonnegative integer, got '" + std::string(tok.text) + "'",
                     line, tok.column);
  }
  return value;
}

void append_real(std::string& out, double v) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  out.append(buf, static_cast<std::size_t>(len));
}

}  // namespace

SurfaceMesh::SurfaceMesh(std::size_t nx, std::size_t ny, double dx, double dy,
                         double x0, double y0)
    : n_x(nx),
      n_y(ny),
      spacing_x(dx),
      spacing_y(dy),
      origin_x(x0),
      origin_y(y0),
      z(nx * ny, std::numeric_limits<double>::quiet_NaN()),
      valid(nx * ny, 0) {}

void SurfaceMesh::set(std::size_t ix, std::size_t iy, double value) {
  if (!std::isfinite(value)) throw DomainError("SurfaceMesh::set: value must be finite");
  z[index(ix, iy)] = value;
  valid[index(ix, iy)] = 1;
}

void SurfaceMesh::invalidate(std::size_t ix, std::size_t iy) {
  z[index(ix, iy)] = std::numeric_limits<double>::quiet_NaN();
  valid[index(ix, iy)] = 0;
}

std::size_t SurfaceMesh::valid_count() const noexcept {
  std::size_t n = 0;
  for (auto v : valid) n += v != 0;
  return n;
}

SurfaceMesh SurfaceMesh::empty_like() const {
  return SurfaceMesh(n_x, n_y, spacing_x, spacing_y, origin_x, origin_y);
}

void SurfaceMesh::validate() const {
  if (n_x < 3 || n_y < 3) throw DomainError("SurfaceMesh: dimensions must be at least 3x3");
  if (!(spacing_x > 0.0) || !(spacing_y > 0.0)) {
    throw DomainError("SurfaceMesh: spacings must be positive");
  }
  if (z.size() != n_x * n_y || valid.size() != n_x * n_y) {
    throw DomainError("SurfaceMesh: storage size disagrees with dimensions");
  }
  bool interior = false;
  for (std::size_t iy = 0; iy < n_y; ++iy) {
    for (std::size_t ix = 0; ix < n_x; ++ix) {
      if (!is_valid(ix, iy)) continue;
      if (!std::isfinite(at(ix, iy))) throw DomainError("SurfaceMesh: non-finite valid value");
      interior = interior || (ix > 0 && iy > 0 && ix + 1 < n_x && iy + 1 < n_y);
    }
  }
  if (!interior) throw DomainError("SurfaceMesh: no valid interior node");
}

void write_mesh(const SurfaceMesh& mesh, std::ostream& out) {
  std::string text;
  text += std::to_string(mesh.n_y) + ' ' + std::to_string(mesh.n_x);
  for (double v : {mesh.spacing_x, mesh.spacing_y, mesh.origin_x, mesh.origin_y}) {
    text += ' ';
    append_real(text, v);
  }
  text += '\n';
  for (std::size_t iy = 0; iy < mesh.n_y; ++iy) {
    for (std::size_t ix = 0; ix < mesh.n_x; ++ix) {
      if (ix > 0) text += ' ';
      if (mesh.is_valid(ix, iy)) {
        append_real(text, mesh.at(ix, iy));
      } else {
        text += "nan";
      }
    }
    text += '\n';
  }
  out << text;
}

void write_mesh(const SurfaceMesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_mesh(mesh, out);
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

SurfaceMesh read_mesh(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_content_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!split(line).empty()) return true;
    }
    return false;
  };

  if (!next_content_line()) throw ParseError("missing header", line_no + 1, 1);
  const auto header = split(line);
  if (header.size() != 6) {
    throw ParseError("header needs 6 fields: rows cols spacing_x spacing_y origin_x origin_y",
                     line_no, header.empty() ? 1 : header.front().column);
  }
  const std::size_t rows = parse_count(header[0], line_no);
  const std::size_t cols = parse_count(header[1], line_no);
  if (rows < 3 || cols < 3) throw ParseError("mesh must be at least 3x3", line_no, 1);
  const double dx = parse_real(header[2], line_no);
  const double dy = parse_real(header[3], line_no);
  if (!(dx > 0.0)) throw ParseError("spacing_x must be positive", line_no, header[2].column);
  if (!(dy > 0.0)) throw ParseError("spacing_y must be positive", line_no, header[3].column);
  SurfaceMesh mesh(cols, rows, dx, dy, parse_real(header[4], line_no),
                   parse_real(header[5], line_no));

  for (std::size_t iy = 0; iy < rows; ++iy) {
    if (!next_content_line()) {
      throw ParseError("expected " + std::to_string(rows) + " rows, found " +
                           std::to_string(iy),
                       line_no + 1, 1);
    }
    const auto tokens = split(line);
    if (tokens.size() != cols) {
      const std::size_t col = tokens.size() > cols ? tokens[cols].column : line.size() + 1;
      throw DimensionMismatch("row has " + std::to_string(tokens.size()) +
                                  " values, expected " + std::to_string(cols),
                              line_no, col);
    }
    for (std::size_t ix = 0; ix < cols; ++ix) {
      if (tokens[ix].text == "nan") continue;
      mesh.set(ix, iy, parse_real(tokens[ix], line_no));
    }
  }
  if (next_content_line()) {
    throw ParseError("unexpected content after the last row", line_no,
                     split(line).front().column);
  }
  return mesh;
}

SurfaceMesh read_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return read_mesh(in);
}

}  // namespace cornea
