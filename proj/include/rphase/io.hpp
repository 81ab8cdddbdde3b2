#pragma once

#include <span>
#include <string>

#include "rphase/field.hpp"
#include "rphase/geometry.hpp"
#include "rphase/ridge.hpp"

namespace rphase {

// Formats a double with enough digits to round-trip exactly; used for
// all text output so reruns are byte-identical.
std::string fmt_double(double v);

// Binary PGM (P5), maxval 255 or 65535 (16-bit samples big-endian, per
// the format). A comment line carries the grid metadata:
//   # L=<m> dx=<m> dy=<m> k=<rad/m> cx=<m> cy=<m>
// Rows are written top to bottom, i.e. from max y to min y, so the
// image displays with y upward.
void write_pgm(const std::string& path, const RasterImage& img,
               double wavenumber);

// CSV rows "x,y,intensity", row-major from pixel (0,0).
void write_interferogram_csv(const std::string& path,
                             const Interferogram& img);

// Compact binary interferogram. Layout, all little-endian:
//   bytes 0..7   magic "RPHASE01"
//   u32 nx, u32 ny
//   f64 L, dx, dy, cx, cy, k, a0x, a0y, a1x, a1y, a2x, a2y
//   f64 samples[ny*nx], row-major
void write_interferogram_binary(const std::string& path,
                                const Interferogram& img,
                                const PinholeGeometry& geom,
                                double wavenumber);

struct BinaryInterferogram {
    Interferogram img;
    PinholeGeometry geom;
    double wavenumber = 0.0;
};

// Throws FileFormatError on magic mismatch or truncation.
BinaryInterferogram read_interferogram_binary(const std::string& path);

// CSV rows "family,k_x,k_y,delta,n_min,n_max" with family labels
// 12, 23, 31.
void write_family_csv(const std::string& path,
                      std::span<const RidgeLineFamily> families);

// CSV rows "v0x,v0y,v1x,v1y,v2x,v2y,n,area,elemental".
void write_triangle_csv(const std::string& path,
                        std::span<const RidgeTriangle> triangles);

// Interferogram quantized to 8 bits into [0, 200] with the ridge lines
// of all families drawn at full white.
RasterImage render_overlay(const Interferogram& img,
                           std::span<const RidgeLineFamily> families);

} // namespace rphase
