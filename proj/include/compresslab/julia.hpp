#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "compresslab/poly.hpp"

namespace compresslab {

struct Bounds {
  double re_min = -3.5;
  double re_max = 1.5;
  double im_min = -2.0;
  double im_max = 2.0;
};

// Escape-time image. cells[row * width + col] is the first n with
// |P^n(z)| > escape_radius, or 0 if the orbit stayed bounded for max_iter
// steps. Row 0 is the top (im_max) edge.
struct Raster {
  Bounds bounds;
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t max_iter = 0;
  double escape_radius = 0.0;
  std::vector<std::uint32_t> cells;

  std::uint32_t at(std::size_t row, std::size_t col) const { return cells.at(row * width + col); }
  Complex pixel_center(std::size_t row, std::size_t col) const;
};

// nullopt when the orbit never leaves the disk within max_iter steps.
// Requires max_iter >= 1 and escape_radius >= 4 (DomainError otherwise).
std::optional<std::size_t> classify_point(Complex z, std::size_t max_iter = 256, double escape_radius = 4.0,
                                          const MergePolynomial& poly = MergePolynomial());

// Requires width, height >= 64.
Raster filled_julia(const Bounds& bounds = Bounds(), std::size_t width = 500, std::size_t height = 400,
                    std::size_t max_iter = 256, double escape_radius = 4.0,
                    const MergePolynomial& poly = MergePolynomial());

// Plain PGM: interior pixels black, escaped pixels brighter the sooner they escape.
void write_pgm(std::ostream& out, const Raster& raster);
// Comment header with bounds and size, then `row,col,re,im,escape`.
void write_raster_csv(std::ostream& out, const Raster& raster);

}  // namespace compresslab
