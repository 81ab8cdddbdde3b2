#pragma once

#include <cstdint>
#include <optional>

#include "rphase/field.hpp"
#include "rphase/geometry.hpp"
#include "rphase/states.hpp"

namespace rphase {

// Per-source parameters of the three-pinhole illumination.
struct SourceConfig {
    double wavenumber = 0.0;          // k, rad/m
    std::array<double, 3> phases{};   // phi_j, rad
    std::array<JonesVector, 3> states;
    double amplitude = 1.0;           // dimensionless C

    void validate() const;
};

// Intensity of the superposed spherical waves, computed with the full
// Euclidean source-to-pixel distances (no approximation):
//   p = || sum_j C e^{i(k|R-a_j| + phi_j)} / |R-a_j| * psi_j ||^2.
// Throws GeometryOverlap when a pixel comes within 1e-6 m of a source.
// threads > 1 parallelizes the per-pixel map over row blocks; the
// result is identical for any thread count.
Interferogram exact_intensity(const PinholeGeometry& geom,
                              const SourceConfig& src,
                              const ObservationGrid& grid, int threads = 1);

// Paraxial far-field intensity,
//   p = (C^2/L^2) * (-3 + sum_cyclic P_ij),
// with P_ij = 2 (1 + |<psi_i|psi_j>| cos[k_ij.r - phi_ij + arg<psi_i|psi_j>]).
Interferogram paraxial_intensity(const PinholeGeometry& geom,
                                 const SourceConfig& src,
                                 const ObservationGrid& grid,
                                 int threads = 1);

// Single fringe family P_ij(x, y) scaled by C^2/L^2, i.e. the two-beam
// pattern with the third pinhole closed. Throws BadPinholePair when
// i == j or an index is out of range.
Interferogram pair_fringe(const PinholeGeometry& geom, const SourceConfig& src,
                          int i, int j, const ObservationGrid& grid);

// Margins of the far-field condition |r - a_j| << (L^3/k)^(1/4) << L.
struct ValidityReport {
    double far_field_scale = 0.0;  // (L^3/k)^(1/4), meters
    double ratio_extent = 0.0;     // max_{j,r} |r - a_j| / scale
    double ratio_far = 0.0;        // scale / L
    double threshold = 0.1;
    bool pass = false;
};

ValidityReport check_paraxial_validity(const PinholeGeometry& geom,
                                       double wavenumber,
                                       const ObservationGrid& grid,
                                       double threshold = 0.1);

// Seeded Poisson shot noise. Expected counts per pixel are the sample
// values rescaled so their grid average equals mean_counts.
struct NoiseSpec {
    std::uint64_t seed = 1;
    double mean_counts = 1000.0;
};

// Replaces each sample with a Poisson draw of its expected count.
// Deterministic for a fixed seed (fixed row-major draw order).
// Throws EmptyImage on an all-zero input.
Interferogram apply_shot_noise(const Interferogram& img, const NoiseSpec& spec);

// Linear scaling of the image (after optional shot noise) to the full
// integer range [0, 2^bit_depth - 1] by the image maximum.
// bit_depth must be 8 or 16. Throws EmptyImage on all-zero input.
RasterImage quantize(const Interferogram& img, int bit_depth,
                     const std::optional<NoiseSpec>& noise = std::nullopt);

// Interprets raster counts as an intensity field again.
Interferogram to_interferogram(const RasterImage& img);

} // namespace rphase
