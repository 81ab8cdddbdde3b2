#pragma once

#include <array>
#include <cstddef>
#include <utility>

#include "rphase/vec2.hpp"

namespace rphase {

// The cyclic pinhole pairs (0,1), (1,2), (2,0), in this order.
inline constexpr std::array<std::pair<int, int>, 3> kCyclicPairs{
    {{0, 1}, {1, 2}, {2, 0}}};

// Three pinholes in the source plane z = 0. Construction recenters the
// coordinates at the circumcenter of the triangle, so the stored
// positions all have the same length (the circumradius); the intensity
// pattern is unaffected by the recentering.
class PinholeGeometry {
  public:
    // Throws CollinearPinholes when the points span no area.
    static PinholeGeometry from_points(Vec2 p0, Vec2 p1, Vec2 p2);

    // Equilateral triangle of the given side length: pinhole 0 lower
    // left, 1 lower right, 2 on top, circumcenter at the origin.
    static PinholeGeometry equilateral(double side);

    Vec2 position(int j) const { return pos_[static_cast<size_t>(j)]; }
    const std::array<Vec2, 3>& positions() const { return pos_; }

    double circumradius() const { return circumradius_; }
    // Area S0 of the pinhole triangle.
    double area() const { return area_; }

    // k_ij = wavenumber * (a_i - a_j) / L, the fringe carrier of pair
    // (i, j) on the observation plane at distance L.
    Vec2 kvec(int i, int j, double wavenumber, double L) const;

    // b_i = e_z x (a_j - a_k) with (i, j, k) cyclic; orthogonal to
    // k_jk, so a directional derivative along b_i annihilates the
    // (j, k) fringe family.
    Vec2 bvec(int i) const;

  private:
    PinholeGeometry() = default;
    std::array<Vec2, 3> pos_{};
    double circumradius_ = 0.0;
    double area_ = 0.0;
};

// Sampled observation plane at distance L from the sources. Pixel
// (ix, iy) = (0, 0) sits at the lower-left corner (minimum x and y);
// x grows rightward with ix, y upward with iy. Fields are stored
// row-major, index iy * nx + ix.
struct ObservationGrid {
    double L = 0.0;
    int nx = 0, ny = 0;
    double dx = 0.0, dy = 0.0;
    Vec2 center{};

    double x(int ix) const { return center.x + (ix - 0.5 * (nx - 1)) * dx; }
    double y(int iy) const { return center.y + (iy - 0.5 * (ny - 1)) * dy; }
    Vec2 pos(int ix, int iy) const { return {x(ix), y(iy)}; }

    std::size_t npix() const {
        return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    }

    // Bounding rectangle of the pixel centers.
    Rect bounds() const { return {x(0), x(nx - 1), y(0), y(ny - 1)}; }

    // Throws Error when L, pixel counts or pitches are out of range.
    void validate() const;
};

} // namespace rphase
