#include "rphase/states.hpp"

#include <cmath>

#include "rphase/errors.hpp"

namespace rphase {

namespace {
constexpr double kDegeneracyTol = 1e-9;
} // namespace

double canonical_angle(double rad) {
    double r = std::fmod(rad, kTwoPi);
    if (r < 0.0)
        r += kTwoPi;
    if (r >= kTwoPi) // fmod/rounding can land exactly on 2*pi
        r -= kTwoPi;
    return r;
}

double circular_distance(double a, double b) {
    const double d = canonical_angle(a - b);
    return std::min(d, kTwoPi - d);
}

JonesVector::JonesVector(Complex h, Complex v) : h_(h), v_(v) {
    const double n2 = std::norm(h) + std::norm(v);
    if (!(std::abs(n2 - 1.0) <= 1e-12))
        throw Error("JonesVector: components are not unit-norm");
}

JonesVector JonesVector::normalized(Complex h, Complex v) {
    const double n = std::sqrt(std::norm(h) + std::norm(v));
    if (!(n > 0.0) || !std::isfinite(n))
        throw Error("JonesVector: cannot normalize zero or non-finite state");
    return JonesVector(h / n, v / n);
}

Complex inner_product(const JonesVector& a, const JonesVector& b) {
    return std::conj(a.h()) * b.h() + std::conj(a.v()) * b.v();
}

double visibility(const JonesVector& a, const JonesVector& b) {
    return std::min(std::abs(inner_product(a, b)), 1.0);
}

double pancharatnam_phase(const JonesVector& a, const JonesVector& b,
                          const JonesVector& c) {
    const Complex ab = inner_product(a, b);
    const Complex bc = inner_product(b, c);
    const Complex ca = inner_product(c, a);
    if (std::abs(ab) <= kDegeneracyTol || std::abs(bc) <= kDegeneracyTol ||
        std::abs(ca) <= kDegeneracyTol)
        throw DegenerateTriple(
            "pancharatnam_phase: a pairwise inner product is (near) zero");
    return canonical_angle(std::arg(ab * bc * ca));
}

StokesPoint to_stokes(const JonesVector& a) {
    const Complex hv = std::conj(a.h()) * a.v();
    return {std::norm(a.h()) - std::norm(a.v()), 2.0 * hv.real(),
            2.0 * hv.imag()};
}

double spherical_triangle_solid_angle(const StokesPoint& p,
                                      const StokesPoint& q,
                                      const StokesPoint& r) {
    const double pq = p.dot(q);
    const double qr = q.dot(r);
    const double rp = r.dot(p);
    if (pq <= -1.0 + kDegeneracyTol || qr <= -1.0 + kDegeneracyTol ||
        rp <= -1.0 + kDegeneracyTol)
        throw DegenerateTriple(
            "spherical_triangle_solid_angle: antipodal vertex pair");

    // det[p; q; r]
    const double det = p.s1 * (q.s2 * r.s3 - q.s3 * r.s2) -
                       p.s2 * (q.s1 * r.s3 - q.s3 * r.s1) +
                       p.s3 * (q.s1 * r.s2 - q.s2 * r.s1);
    // Van Oosterom & Strackee, IEEE Trans. Biomed. Eng. 30, 125 (1983),
    // with the sign flipped so clockwise-from-outside winding is positive.
    return -2.0 * std::atan2(det, 1.0 + pq + qr + rp);
}

std::array<JonesVector, 3> reference_states(double theta) {
    const double s3 = std::sqrt(3.0);
    const Complex i{0.0, 1.0};
    return {JonesVector(s3 / 2.0, i / 2.0),
            JonesVector(i * s3 / 2.0, 0.5),
            JonesVector(std::cos(theta), std::sin(theta))};
}

double delta3_reference(double theta) {
    const auto psi = reference_states(theta);
    return pancharatnam_phase(psi[0], psi[1], psi[2]);
}

} // namespace rphase
