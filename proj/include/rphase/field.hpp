#pragma once

#include <cstdint>
#include <vector>

#include "rphase/geometry.hpp"

namespace rphase {

// Real-valued scalar field sampled on an observation grid, row-major.
struct Field2D {
    ObservationGrid grid;
    std::vector<double> samples;

    double at(int ix, int iy) const {
        return samples[static_cast<std::size_t>(iy) * grid.nx + ix];
    }
    double& at(int ix, int iy) {
        return samples[static_cast<std::size_t>(iy) * grid.nx + ix];
    }
};

// Intensity field: samples are non-negative.
using Interferogram = Field2D;
// Derivative-filtered field: samples may be negative.
using FilteredField = Field2D;

// Pixel-index rectangle; nx columns starting at ix0, ny rows at iy0.
struct PixelRect {
    int ix0 = 0, iy0 = 0;
    int nx = 0, ny = 0;
};

// Integer image as captured by a CCD-like detector; values span
// [0, 2^bit_depth - 1].
struct RasterImage {
    ObservationGrid grid;
    int bit_depth = 8; // 8 or 16
    std::vector<std::uint16_t> samples;

    int maxval() const { return (1 << bit_depth) - 1; }
};

} // namespace rphase
