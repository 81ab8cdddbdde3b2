#include "rphase/ridge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rphase/errors.hpp"

namespace rphase {

namespace {

constexpr double kLatticeDegeneracyTol = 1e-3; // rad, on the defect mod 2*pi

struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

} // namespace

FilteredField directional_derivative(const Field2D& field, Vec2 b) {
    const ObservationGrid& g = field.grid;
    if (g.nx < 3 || g.ny < 3)
        throw GridTooSmall(
            "directional_derivative: need at least 3 samples per axis");

    FilteredField out{g, std::vector<double>(g.npix(), 0.0)};
    const double cx = b.x / (2.0 * g.dx);
    const double cy = b.y / (2.0 * g.dy);
    for (int iy = 0; iy < g.ny; ++iy) {
        const bool ylo = iy == 0;
        const bool yhi = iy == g.ny - 1;
        for (int ix = 0; ix < g.nx; ++ix) {
            double gx;
            if (ix == 0)
                gx = 2.0 * (field.at(1, iy) - field.at(0, iy));
            else if (ix == g.nx - 1)
                gx = 2.0 * (field.at(ix, iy) - field.at(ix - 1, iy));
            else
                gx = field.at(ix + 1, iy) - field.at(ix - 1, iy);

            double gy;
            if (ylo)
                gy = 2.0 * (field.at(ix, 1) - field.at(ix, 0));
            else if (yhi)
                gy = 2.0 * (field.at(ix, iy) - field.at(ix, iy - 1));
            else
                gy = field.at(ix, iy + 1) - field.at(ix, iy - 1);

            out.at(ix, iy) = cx * gx + cy * gy;
        }
    }
    return out;
}

FilteredField isolate_fringe(const Interferogram& img,
                             const PinholeGeometry& geom, int i, int j,
                             double wavenumber) {
    if (i == j || i < 0 || i > 2 || j < 0 || j > 2)
        throw BadPinholePair(
            "isolate_fringe: indices must be distinct in 0..2");

    const Vec2 bi = geom.bvec(i);
    const Vec2 bj = geom.bvec(j);
    const Vec2 kij = geom.kvec(i, j, wavenumber, img.grid.L);

    FilteredField f = directional_derivative(img, bi);
    f = directional_derivative(f, bj);

    const double gain = -(bi.dot(kij)) * (bj.dot(kij));
    for (double& s : f.samples)
        s /= gain;
    return f;
}

PixelRect default_demod_window(const ObservationGrid& grid) {
    constexpr int margin = 2;
    return {margin, margin, grid.nx - 2 * margin, grid.ny - 2 * margin};
}

Demod demodulate_phase(const FilteredField& field, Vec2 kvec,
                       const PixelRect& window) {
    const ObservationGrid& g = field.grid;
    if (window.nx < 2 || window.ny < 2 || window.ix0 < 0 || window.iy0 < 0 ||
        window.ix0 + window.nx > g.nx || window.iy0 + window.ny > g.ny)
        throw WindowTooSmall("demodulate_phase: window out of grid bounds");

    const double kn = kvec.norm();
    if (!(kn > 0.0))
        throw Error("demodulate_phase: zero carrier");

    // Fringe periods across the window, measured along the carrier.
    const double wx = (window.nx - 1) * g.dx;
    const double wy = (window.ny - 1) * g.dy;
    const double extent =
        std::abs(kvec.x / kn) * wx + std::abs(kvec.y / kn) * wy;
    if (extent * kn / kTwoPi < 2.0)
        throw WindowTooSmall(
            "demodulate_phase: window spans fewer than 2 fringe periods");

    // Hann window, symmetric about the window center; a symmetric
    // weight keeps the phase estimate free of leakage bias.
    std::vector<double> hx(static_cast<std::size_t>(window.nx));
    std::vector<double> hy(static_cast<std::size_t>(window.ny));
    for (int ix = 0; ix < window.nx; ++ix) {
        const double s = std::sin(kPi * (ix + 0.5) / window.nx);
        hx[static_cast<std::size_t>(ix)] = s * s;
    }
    for (int iy = 0; iy < window.ny; ++iy) {
        const double s = std::sin(kPi * (iy + 0.5) / window.ny);
        hy[static_cast<std::size_t>(iy)] = s * s;
    }

    KahanSum zr, zi, wsum, rms;
    for (int iy = 0; iy < window.ny; ++iy) {
        const double y = g.y(window.iy0 + iy);
        const double wy_ = hy[static_cast<std::size_t>(iy)];
        for (int ix = 0; ix < window.nx; ++ix) {
            const double x = g.x(window.ix0 + ix);
            const double w = wy_ * hx[static_cast<std::size_t>(ix)];
            const double v = field.at(window.ix0 + ix, window.iy0 + iy);
            const double ph = -(kvec.x * x + kvec.y * y);
            zr.add(w * v * std::cos(ph));
            zi.add(w * v * std::sin(ph));
            wsum.add(w);
            rms.add(w * v * v);
        }
    }

    const double zmag = std::hypot(zr.sum, zi.sum);
    const double field_rms = std::sqrt(std::max(0.0, rms.sum / wsum.sum));
    if (zmag / wsum.sum <= 1e-6 * field_rms || field_rms == 0.0)
        throw ZeroAmplitude(
            "demodulate_phase: no fringe at the requested carrier");

    Demod d;
    d.amplitude = 2.0 * zmag / wsum.sum;
    d.delta = canonical_angle(-std::atan2(zi.sum, zr.sum));
    return d;
}

RidgeLineFamily build_ridge_family(Vec2 kvec, double delta,
                                   const Rect& region) {
    if (!(kvec.norm() > 0.0))
        throw Error("build_ridge_family: zero carrier");

    RidgeLineFamily fam;
    fam.kvec = kvec;
    fam.delta = canonical_angle(delta);

    // Range of kvec.r over the rectangle corners.
    const std::array<Vec2, 4> corners{Vec2{region.xmin, region.ymin},
                                      {region.xmin, region.ymax},
                                      {region.xmax, region.ymin},
                                      {region.xmax, region.ymax}};
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& c : corners) {
        const double v = kvec.dot(c);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }

    // Lines at delta + 2 pi n with value in [lo, hi).
    fam.n_min = static_cast<int>(std::ceil((lo - fam.delta) / kTwoPi));
    fam.n_max = static_cast<int>(std::ceil((hi - fam.delta) / kTwoPi)) - 1;
    return fam;
}

namespace {

// Intersection of the lines ka.r = ca and kb.r = cb.
Vec2 line_intersection(Vec2 ka, double ca, Vec2 kb, double cb) {
    const double det = ka.cross(kb);
    return {(ca * kb.y - cb * ka.y) / det, (cb * ka.x - ca * kb.x) / det};
}

double shoelace_area(const std::array<Vec2, 3>& v) {
    return 0.5 * std::abs((v[1] - v[0]).cross(v[2] - v[0]));
}

// True when no line of the family crosses the open interior of the
// triangle, i.e. no lattice value delta + 2 pi m falls strictly inside
// the span of kvec.r over the vertices.
bool family_clear_of_interior(const RidgeLineFamily& fam,
                              const std::array<Vec2, 3>& v) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& p : v) {
        const double val = fam.kvec.dot(p);
        lo = std::min(lo, val);
        hi = std::max(hi, val);
    }
    const double tol = 1e-9 * kTwoPi;
    const int m_first =
        static_cast<int>(std::ceil((lo + tol - fam.delta) / kTwoPi));
    const int m_last =
        static_cast<int>(std::floor((hi - tol - fam.delta) / kTwoPi));
    return m_last < m_first;
}

} // namespace

std::vector<RidgeTriangle> elemental_triangles(const RidgeLineFamily& f12,
                                               const RidgeLineFamily& f23,
                                               const RidgeLineFamily& f31,
                                               const Rect& region) {
    // Concurrency check: when the summed offsets sit at a multiple of
    // 2 pi, the three families share intersection points and the small
    // triangle class collapses.
    const double residual =
        canonical_angle(f12.delta + f23.delta + f31.delta);
    if (std::min(residual, kTwoPi - residual) < kLatticeDegeneracyTol)
        throw DegenerateLattice(
            "elemental_triangles: ridge families are (near) concurrent");

    std::vector<RidgeTriangle> out;
    const std::array<const RidgeLineFamily*, 3> fams{&f12, &f23, &f31};

    for (int n12 = f12.n_min - 1; n12 <= f12.n_max + 1; ++n12) {
        const double c12 = f12.line_offset(n12);
        for (int n23 = f23.n_min - 1; n23 <= f23.n_max + 1; ++n23) {
            const double c23 = f23.line_offset(n23);
            // Candidate third lines: defect within (-4 pi, 4 pi).
            const double base = -(c12 + c23);
            const int lo = static_cast<int>(
                std::ceil((base - 2.0 * kTwoPi - f31.delta) / kTwoPi));
            const int hi = static_cast<int>(
                std::floor((base + 2.0 * kTwoPi - f31.delta) / kTwoPi));
            for (int n31 = lo; n31 <= hi; ++n31) {
                const double c31 = f31.line_offset(n31);
                const double defect = c12 + c23 + c31;
                if (std::abs(defect) >= 2.0 * kTwoPi)
                    continue;

                RidgeTriangle tri;
                tri.vertices = {
                    line_intersection(f23.kvec, c23, f31.kvec, c31),
                    line_intersection(f31.kvec, c31, f12.kvec, c12),
                    line_intersection(f12.kvec, c12, f23.kvec, c23)};
                if (!region.contains(tri.vertices[0]) ||
                    !region.contains(tri.vertices[1]) ||
                    !region.contains(tri.vertices[2]))
                    continue;

                tri.defect = defect;
                tri.n = static_cast<int>(std::ceil(defect / kTwoPi));
                tri.area = shoelace_area(tri.vertices);
                tri.elemental =
                    family_clear_of_interior(f12, tri.vertices) &&
                    family_clear_of_interior(f23, tri.vertices) &&
                    family_clear_of_interior(f31, tri.vertices);
                out.push_back(tri);
            }
        }
    }
    return out;
}

double recover_delta3(double area, double s0, double wavenumber, double L,
                      int n) {
    (void)n; // the returned magnitude |delta3 - 2 n pi| is n-independent
    if (area < 0.0)
        throw Error("recover_delta3: negative area");
    return 2.0 * wavenumber / L * std::sqrt(area * s0);
}

double delta3_from_phases(double d12, double d23, double d31) {
    return canonical_angle(-(d12 + d23 + d31));
}

ExtractionResult extract_delta3(const Interferogram& img,
                                const PinholeGeometry& geom,
                                double wavenumber) {
    const ObservationGrid& grid = img.grid;
    ExtractionResult res;

    const PixelRect window = default_demod_window(grid);
    for (std::size_t p = 0; p < 3; ++p) {
        const auto [i, j] = kCyclicPairs[p];
        res.carriers[p] = geom.kvec(i, j, wavenumber, grid.L);
        const FilteredField f = isolate_fringe(img, geom, i, j, wavenumber);
        res.fringes[p] = demodulate_phase(f, res.carriers[p], window);
        res.families[p] = build_ridge_family(res.carriers[p],
                                             res.fringes[p].delta,
                                             grid.bounds());
    }

    res.delta3_phase = delta3_from_phases(
        res.fringes[0].delta, res.fringes[1].delta, res.fringes[2].delta);

    res.sum_rule_rhs =
        kPi * grid.L / (wavenumber * std::sqrt(geom.area()));

    try {
        res.triangles = elemental_triangles(res.families[0], res.families[1],
                                            res.families[2], grid.bounds());
    } catch (const DegenerateLattice&) {
        res.degenerate_lattice = true;
        return res;
    }

    KahanSum sum_n0, sum_n1;
    for (const auto& t : res.triangles) {
        if (!t.elemental)
            continue;
        if (t.n == 0) {
            sum_n0.add(t.area);
            ++res.count_n0;
        } else if (t.n == 1) {
            sum_n1.add(t.area);
            ++res.count_n1;
        }
    }
    if (res.count_n0 == 0 || res.count_n1 == 0) {
        // No elemental triangle of one class fits the grid.
        res.degenerate_lattice = true;
        return res;
    }
    res.area_n0 = sum_n0.sum / res.count_n0;
    res.area_n1 = sum_n1.sum / res.count_n1;
    res.delta3_area =
        recover_delta3(res.area_n0, geom.area(), wavenumber, grid.L, 0);
    res.sum_rule_lhs = std::sqrt(res.area_n0) + std::sqrt(res.area_n1);
    return res;
}

} // namespace rphase
