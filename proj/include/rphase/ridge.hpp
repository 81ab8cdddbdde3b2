#pragma once

#include <vector>

#include "rphase/field.hpp"
#include "rphase/geometry.hpp"
#include "rphase/states.hpp"

namespace rphase {

// Central-difference directional derivative (b_x d/dx + b_y d/dy) of a
// sampled field; one-sided differences on the boundary ring. Linear in
// the field. Throws GridTooSmall below 3 samples per axis.
FilteredField directional_derivative(const Field2D& field, Vec2 b);

// Isolates the oscillation of fringe family (i, j) from a single-shot
// interferogram by differentiating along b_i and then b_j; the other
// two families are annihilated because b_i is orthogonal to k_jk and
// b_j to k_ki. The result is normalized by the analytic derivative
// gain -(b_i.k_ij)(b_j.k_ij), so for a paraxial input it approximates
//   2 (C^2/L^2) |<psi_i|psi_j>| cos[k_ij.r - phi_ij + arg<psi_i|psi_j>]
// up to the O((|k| h)^2) attenuation of the difference stencils.
FilteredField isolate_fringe(const Interferogram& img,
                             const PinholeGeometry& geom, int i, int j,
                             double wavenumber);

struct Demod {
    double delta = 0.0;     // canonical [0, 2*pi)
    double amplitude = 0.0; // fringe amplitude estimate
};

// Estimates phase offset and amplitude of a cosine at carrier kvec by
// Hann-weighted complex correlation over the window:
//   Z = sum_px w(px) field(px) e^{-i kvec.r}, delta = canonical(-arg Z),
//   amplitude = 2 |Z| / sum w.
// For field = A cos(kvec.r - d0) this recovers delta = d0, so ridge
// maxima satisfy kvec.r = delta + 2 pi n; on an isolated fringe family
// delta = phi_ij - arg<psi_i|psi_j> (mod 2*pi). The sum runs in fixed
// row-major order with compensated accumulation, so the result is
// reproducible to the last bit regardless of threading elsewhere.
// Throws WindowTooSmall when the window spans fewer than 2 fringe
// periods along kvec, ZeroAmplitude when no fringe is present.
Demod demodulate_phase(const FilteredField& field, Vec2 kvec,
                       const PixelRect& window);

// Largest window clear of the derivative-corrupted boundary: the full
// grid minus a 2-pixel margin (two difference passes each taint one
// boundary ring).
PixelRect default_demod_window(const ObservationGrid& grid);

// One family of parallel ridge lines: kvec.r = delta + 2 pi n for
// integer n in [n_min, n_max].
struct RidgeLineFamily {
    Vec2 kvec{};
    double delta = 0.0;
    int n_min = 0, n_max = -1; // empty when n_max < n_min

    double spacing() const { return kTwoPi / kvec.norm(); }
    double line_offset(int n) const { return delta + kTwoPi * n; }
    int line_count() const { return n_max - n_min + 1; }
};

// Enumerates the line indices n whose line crosses the region
// rectangle; a line exactly on the low edge of the kvec.r span counts
// as inside, one exactly on the high edge does not (closed-left /
// open-right rule).
RidgeLineFamily build_ridge_family(Vec2 kvec, double delta,
                                   const Rect& region);

// Triangle bounded by one ridge line from each family.
struct RidgeTriangle {
    std::array<Vec2, 3> vertices{}; // v0 on lines 23&31, v1 on 31&12, v2 on 12&23
    int n = 0;        // class label: area = L^2/(4 k^2 S0) (delta3 - 2 n pi)^2
    double area = 0.0; // shoelace area of the vertices, m^2
    bool elemental = false; // no ridge line crosses the open interior
    double defect = 0.0;    // sum of the three bounding line offsets
};

// All ridge triangles of the arrangement whose vertices lie in the
// region and whose line-offset defect is within (-4 pi, 4 pi) — the
// two elemental classes plus their immediate non-elemental neighbors.
// Elementality is established geometrically (no family line strictly
// inside the triangle's offset span). Throws DegenerateLattice when
// the three families are concurrent (defect within 1e-3 rad of a
// multiple of 2 pi), where one triangle class collapses.
std::vector<RidgeTriangle> elemental_triangles(const RidgeLineFamily& f12,
                                               const RidgeLineFamily& f23,
                                               const RidgeLineFamily& f31,
                                               const Rect& region);

// Inverts the ridge-triangle area law: returns
// (2 k / L) sqrt(area * s0) = |delta3 - 2 n pi| for a class-n triangle.
// For n = 0 this is the candidate delta3 in [0, 2*pi); for n = 1 the
// candidate is 2*pi minus the returned value.
double recover_delta3(double area, double s0, double wavenumber, double L,
                      int n);

// Combines the three demodulated offsets into the geometric phase:
// canonical(-(d12 + d23 + d31)). The per-pinhole phases phi_j cancel
// in the cyclic sum, leaving arg<1|2> + arg<2|3> + arg<3|1>.
double delta3_from_phases(double d12, double d23, double d31);

// Full single-shot inverse pipeline.
struct ExtractionResult {
    std::array<Demod, 3> fringes;              // per cyclic pair
    std::array<Vec2, 3> carriers;              // k_12, k_23, k_31
    std::array<RidgeLineFamily, 3> families;
    std::vector<RidgeTriangle> triangles;
    double area_n0 = 0.0, area_n1 = 0.0;       // mean area per class
    int count_n0 = 0, count_n1 = 0;
    double delta3_phase = 0.0;                 // phase-sum route
    double delta3_area = 0.0;                  // area route, n = 0 class
    double sum_rule_lhs = 0.0;                 // sqrt(S(0)) + sqrt(S(1))
    double sum_rule_rhs = 0.0;                 // pi L / (k sqrt(S0))
    bool degenerate_lattice = false;           // area route unavailable
};

ExtractionResult extract_delta3(const Interferogram& img,
                                const PinholeGeometry& geom,
                                double wavenumber);

} // namespace rphase
