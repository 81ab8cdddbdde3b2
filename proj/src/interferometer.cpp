#include "rphase/interferometer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <random>
#include <thread>

#include "rphase/errors.hpp"

namespace rphase {

namespace {

// Runs fn(iy) for iy in [0, ny); blocks of rows go to worker threads.
// Each pixel is written exactly once, so the result does not depend on
// the schedule.
void for_each_row(int ny, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1) {
        for (int iy = 0; iy < ny; ++iy)
            fn(iy);
        return;
    }
    const int nthreads = std::min(threads, ny);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([=, &fn] {
            for (int iy = t; iy < ny; iy += nthreads)
                fn(iy);
        });
    }
    for (auto& th : pool)
        th.join();
}

} // namespace

void SourceConfig::validate() const {
    if (!(wavenumber > 0.0))
        throw Error("SourceConfig: wavenumber must be positive");
    if (!(amplitude > 0.0))
        throw Error("SourceConfig: amplitude must be positive");
}

Interferogram exact_intensity(const PinholeGeometry& geom,
                              const SourceConfig& src,
                              const ObservationGrid& grid, int threads) {
    src.validate();
    grid.validate();

    Interferogram out{grid, std::vector<double>(grid.npix(), 0.0)};
    const auto& a = geom.positions();
    const double k = src.wavenumber;
    const double C = src.amplitude;

    // Pre-check the source clearance on the grid corners: with L > 0
    // the closest approach to a source over the rectangle is attained
    // on the boundary, but pixel-wise checking below stays exact.
    std::atomic<bool> overlap{false};

    for_each_row(grid.ny, threads, [&](int iy) {
        const double y = grid.y(iy);
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double x = grid.x(ix);
            Complex eh{0.0, 0.0}, ev{0.0, 0.0};
            for (int j = 0; j < 3; ++j) {
                const double rx = x - a[static_cast<size_t>(j)].x;
                const double ry = y - a[static_cast<size_t>(j)].y;
                const double dist =
                    std::sqrt(rx * rx + ry * ry + grid.L * grid.L);
                if (dist < 1e-6) {
                    overlap.store(true, std::memory_order_relaxed);
                    return;
                }
                const double phase = k * dist + src.phases[static_cast<size_t>(j)];
                const Complex w =
                    std::polar(C / dist, phase);
                eh += w * src.states[static_cast<size_t>(j)].h();
                ev += w * src.states[static_cast<size_t>(j)].v();
            }
            out.at(ix, iy) = std::norm(eh) + std::norm(ev);
        }
    });

    if (overlap.load())
        throw GeometryOverlap(
            "exact_intensity: observation point within 1e-6 m of a source");
    return out;
}

namespace {

struct FringeTerm {
    Vec2 kvec;
    double vis;
    double phase0; // -phi_ij + arg<psi_i|psi_j>
};

std::array<FringeTerm, 3> fringe_terms(const PinholeGeometry& geom,
                                       const SourceConfig& src, double L) {
    std::array<FringeTerm, 3> terms;
    for (std::size_t p = 0; p < 3; ++p) {
        const auto [i, j] = kCyclicPairs[p];
        const Complex ip = inner_product(src.states[static_cast<size_t>(i)],
                                         src.states[static_cast<size_t>(j)]);
        terms[p] = {geom.kvec(i, j, src.wavenumber, L),
                    std::abs(ip),
                    -(src.phases[static_cast<size_t>(i)] -
                      src.phases[static_cast<size_t>(j)]) +
                        std::arg(ip)};
    }
    return terms;
}

} // namespace

Interferogram paraxial_intensity(const PinholeGeometry& geom,
                                 const SourceConfig& src,
                                 const ObservationGrid& grid, int threads) {
    src.validate();
    grid.validate();

    const auto terms = fringe_terms(geom, src, grid.L);
    const double scale =
        src.amplitude * src.amplitude / (grid.L * grid.L);

    Interferogram out{grid, std::vector<double>(grid.npix(), 0.0)};
    for_each_row(grid.ny, threads, [&](int iy) {
        const double y = grid.y(iy);
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double x = grid.x(ix);
            double p = -3.0;
            for (const auto& t : terms)
                p += 2.0 * (1.0 + t.vis * std::cos(t.kvec.x * x +
                                                   t.kvec.y * y + t.phase0));
            out.at(ix, iy) = std::max(0.0, p * scale);
        }
    });
    return out;
}

Interferogram pair_fringe(const PinholeGeometry& geom, const SourceConfig& src,
                          int i, int j, const ObservationGrid& grid) {
    src.validate();
    grid.validate();
    if (i == j || i < 0 || i > 2 || j < 0 || j > 2)
        throw BadPinholePair("pair_fringe: indices must be distinct in 0..2");

    const Complex ip =
        inner_product(src.states[static_cast<size_t>(i)],
                      src.states[static_cast<size_t>(j)]);
    const double vis = std::abs(ip);
    const double phase0 = -(src.phases[static_cast<size_t>(i)] -
                            src.phases[static_cast<size_t>(j)]) +
                          std::arg(ip);
    const Vec2 kv = geom.kvec(i, j, src.wavenumber, grid.L);
    const double scale = src.amplitude * src.amplitude / (grid.L * grid.L);

    Interferogram out{grid, std::vector<double>(grid.npix(), 0.0)};
    for (int iy = 0; iy < grid.ny; ++iy) {
        const double y = grid.y(iy);
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double x = grid.x(ix);
            out.at(ix, iy) =
                scale * 2.0 *
                (1.0 + vis * std::cos(kv.x * x + kv.y * y + phase0));
        }
    }
    return out;
}

ValidityReport check_paraxial_validity(const PinholeGeometry& geom,
                                       double wavenumber,
                                       const ObservationGrid& grid,
                                       double threshold) {
    grid.validate();
    if (!(wavenumber > 0.0))
        throw Error("check_paraxial_validity: wavenumber must be positive");

    ValidityReport rep;
    rep.threshold = threshold;
    rep.far_field_scale =
        std::pow(grid.L * grid.L * grid.L / wavenumber, 0.25);

    // max over pixels r and sources j of |r - a_j|; attained at a grid
    // corner for each source.
    const Rect b = grid.bounds();
    const std::array<Vec2, 4> corners{Vec2{b.xmin, b.ymin}, {b.xmin, b.ymax},
                                      {b.xmax, b.ymin}, {b.xmax, b.ymax}};
    double max_extent = 0.0;
    for (const auto& aj : geom.positions())
        for (const auto& c : corners)
            max_extent = std::max(max_extent, (c - aj).norm());

    rep.ratio_extent = max_extent / rep.far_field_scale;
    rep.ratio_far = rep.far_field_scale / grid.L;
    rep.pass = rep.ratio_extent < threshold && rep.ratio_far < threshold;
    return rep;
}

Interferogram apply_shot_noise(const Interferogram& img,
                               const NoiseSpec& spec) {
    if (!(spec.mean_counts > 0.0))
        throw Error("apply_shot_noise: mean_counts must be positive");
    double mean = 0.0;
    for (double s : img.samples)
        mean += s;
    mean /= static_cast<double>(img.samples.size());
    if (!(mean > 0.0))
        throw EmptyImage("apply_shot_noise: image has no signal");

    const double scale = spec.mean_counts / mean;
    std::mt19937_64 rng(spec.seed);
    Interferogram out{img.grid, std::vector<double>(img.samples.size(), 0.0)};
    for (std::size_t px = 0; px < img.samples.size(); ++px) {
        const double lambda = img.samples[px] * scale;
        if (lambda > 0.0) {
            std::poisson_distribution<long> dist(lambda);
            out.samples[px] = static_cast<double>(dist(rng));
        }
    }
    return out;
}

RasterImage quantize(const Interferogram& img, int bit_depth,
                     const std::optional<NoiseSpec>& noise) {
    if (bit_depth != 8 && bit_depth != 16)
        throw Error("quantize: bit_depth must be 8 or 16");

    const Interferogram* src = &img;
    Interferogram noisy;
    if (noise) {
        noisy = apply_shot_noise(img, *noise);
        src = &noisy;
    }

    const double maxv =
        *std::max_element(src->samples.begin(), src->samples.end());
    if (!(maxv > 0.0))
        throw EmptyImage("quantize: image has no signal");

    RasterImage out{img.grid, bit_depth, {}};
    out.samples.resize(src->samples.size());
    const double full = static_cast<double>(out.maxval());
    for (std::size_t px = 0; px < src->samples.size(); ++px) {
        const double q = std::round(src->samples[px] / maxv * full);
        out.samples[px] =
            static_cast<std::uint16_t>(std::clamp(q, 0.0, full));
    }
    return out;
}

Interferogram to_interferogram(const RasterImage& img) {
    Interferogram out{img.grid, {}};
    out.samples.assign(img.samples.begin(), img.samples.end());
    return out;
}

} // namespace rphase
