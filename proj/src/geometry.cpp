#include "rphase/geometry.hpp"

#include <cmath>

#include "rphase/errors.hpp"

namespace rphase {

PinholeGeometry PinholeGeometry::from_points(Vec2 p0, Vec2 p1, Vec2 p2) {
    const Vec2 u = p1 - p0;
    const Vec2 w = p2 - p0;
    const double twice_area = u.cross(w);
    const double scale2 = std::max(u.norm2(), w.norm2());
    if (!(std::abs(twice_area) > 1e-12 * scale2) || scale2 == 0.0)
        throw CollinearPinholes("pinhole positions are collinear");

    // Circumcenter relative to p0.
    const double uu = u.norm2();
    const double ww = w.norm2();
    const Vec2 cc{(w.y * uu - u.y * ww) / (2.0 * twice_area),
                  (u.x * ww - w.x * uu) / (2.0 * twice_area)};
    const Vec2 center = p0 + cc;

    PinholeGeometry g;
    g.pos_ = {p0 - center, p1 - center, p2 - center};
    g.circumradius_ = (g.pos_[0].norm() + g.pos_[1].norm() + g.pos_[2].norm()) / 3.0;
    g.area_ = 0.5 * std::abs(twice_area);
    return g;
}

PinholeGeometry PinholeGeometry::equilateral(double side) {
    if (!(side > 0.0))
        throw Error("equilateral: side must be positive");
    const double r = side / std::sqrt(3.0); // circumradius
    return from_points({-side / 2.0, -r / 2.0}, {side / 2.0, -r / 2.0},
                       {0.0, r});
}

Vec2 PinholeGeometry::kvec(int i, int j, double wavenumber, double L) const {
    return (position(i) - position(j)) * (wavenumber / L);
}

Vec2 PinholeGeometry::bvec(int i) const {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    return ez_cross(position(j) - position(k));
}

void ObservationGrid::validate() const {
    if (!(L > 0.0))
        throw Error("ObservationGrid: L must be positive");
    if (nx < 2 || ny < 2)
        throw Error("ObservationGrid: need at least 2 pixels per axis");
    if (!(dx > 0.0) || !(dy > 0.0))
        throw Error("ObservationGrid: pixel pitch must be positive");
}

} // namespace rphase
