#include "compresslab/julia.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "compresslab/errors.hpp"
#include "compresslab/parallel.hpp"

namespace compresslab {

Complex Raster::pixel_center(std::size_t row, std::size_t col) const {
  const double dx = (bounds.re_max - bounds.re_min) / static_cast<double>(width);
  const double dy = (bounds.im_max - bounds.im_min) / static_cast<double>(height);
  // Measured from the centre so that mirrored rows get exactly opposite
  // imaginary parts.
  const double re_mid = 0.5 * (bounds.re_min + bounds.re_max);
  const double im_mid = 0.5 * (bounds.im_min + bounds.im_max);
  return {re_mid + (static_cast<double>(col) + 0.5 - 0.5 * static_cast<double>(width)) * dx,
          im_mid + (0.5 * static_cast<double>(height) - static_cast<double>(row) - 0.5) * dy};
}

std::optional<std::size_t> classify_point(Complex z, std::size_t max_iter, double escape_radius,
                                          const MergePolynomial& poly) {
  if (max_iter < 1) throw DomainError("classify_point: max_iter must be >= 1");
  if (!(escape_radius >= 4.0)) throw DomainError("classify_point: escape radius must be >= 4");
  const double limit = std::max(escape_radius, poly.escape_radius());
  const double limit2 = limit * limit;
  if (std::norm(z) > limit2) return 0;
  for (std::size_t n = 1; n <= max_iter; ++n) {
    z = merge_horner(poly.a1(), poly.a2(), poly.a3(), z);
    if (!(std::norm(z) <= limit2)) return n;
  }
  return std::nullopt;
}

Raster filled_julia(const Bounds& bounds, std::size_t width, std::size_t height, std::size_t max_iter,
                    double escape_radius, const MergePolynomial& poly) {
  if (width < 64 || height < 64) throw DomainError("filled_julia: resolution must be at least 64x64");
  if (!(bounds.re_max > bounds.re_min) || !(bounds.im_max > bounds.im_min)) {
    throw DomainError("filled_julia: empty bounds");
  }
  Raster raster;
  raster.bounds = bounds;
  raster.width = width;
  raster.height = height;
  raster.max_iter = max_iter;
  raster.escape_radius = escape_radius;
  raster.cells.resize(width * height);
  parallel_for(height, [&](std::size_t row) {
    for (std::size_t col = 0; col < width; ++col) {
      const auto n = classify_point(raster.pixel_center(row, col), max_iter, escape_radius, poly);
      // A point outside the disk escapes "at step 0"; report it as step 1.
      raster.cells[row * width + col] = n ? static_cast<std::uint32_t>(std::max<std::size_t>(*n, 1)) : 0;
    }
  });
  return raster;
}

void write_pgm(std::ostream& out, const Raster& raster) {
  constexpr unsigned kMaxGray = 255;
  out << "P2\n";
  char buf[160];
  std::snprintf(buf, sizeof buf, "# bounds %.9g %.9g %.9g %.9g max_iter %zu\n", raster.bounds.re_min,
                raster.bounds.re_max, raster.bounds.im_min, raster.bounds.im_max, raster.max_iter);
  out << buf << raster.width << ' ' << raster.height << '\n' << kMaxGray << '\n';
  for (std::size_t row = 0; row < raster.height; ++row) {
    for (std::size_t col = 0; col < raster.width; ++col) {
      const std::uint32_t n = raster.at(row, col);
      unsigned gray = 0;
      if (n != 0) {
        const std::size_t steps = std::min<std::size_t>(n, 64);
        gray = kMaxGray - static_cast<unsigned>((steps - 1) * (kMaxGray - 32) / 63);
      }
      out << gray << (col + 1 == raster.width ? '\n' : ' ');
    }
  }
}

void write_raster_csv(std::ostream& out, const Raster& raster) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "# bounds=%.9g,%.9g,%.9g,%.9g resolution=%zux%zu max_iter=%zu escape_radius=%.9g\n",
                raster.bounds.re_min, raster.bounds.re_max, raster.bounds.im_min, raster.bounds.im_max, raster.width,
                raster.height, raster.max_iter, raster.escape_radius);
  out << buf << "row,col,re,im,escape\n";
  for (std::size_t row = 0; row < raster.height; ++row) {
    for (std::size_t col = 0; col < raster.width; ++col) {
      const Complex z = raster.pixel_center(row, col);
      std::snprintf(buf, sizeof buf, "%zu,%zu,%.9g,%.9g,%u\n", row, col, z.real(), z.imag(), raster.at(row, col));
      out << buf;
    }
  }
}

}  // namespace compresslab
