#pragma once

#include <array>
#include <complex>

namespace rphase {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Maps an angle in radians to the canonical range [0, 2*pi).
double canonical_angle(double rad);

// Distance between two angles on the circle, in [0, pi].
double circular_distance(double a, double b);

using Complex = std::complex<double>;

// Pure polarization state in the |H>, |V> basis. Unit norm is a type
// invariant: the checked constructor rejects components whose squared
// norm deviates from 1 by more than 1e-12; use normalized() to build
// from arbitrary components.
class JonesVector {
  public:
    JonesVector(Complex h, Complex v);
    static JonesVector normalized(Complex h, Complex v);

    Complex h() const { return h_; }
    Complex v() const { return v_; }

  private:
    Complex h_, v_;
};

// Point on the Poincare sphere: s1 = H/V balance, s2 = diagonal
// balance, s3 = circular balance. |H> maps to (1, 0, 0).
struct StokesPoint {
    double s1 = 0.0, s2 = 0.0, s3 = 0.0;

    double dot(const StokesPoint& o) const {
        return s1 * o.s1 + s2 * o.s2 + s3 * o.s3;
    }
};

// <a|b> = conj(a) . b
Complex inner_product(const JonesVector& a, const JonesVector& b);

// Fringe contrast of two-beam interference between the states: |<a|b>|.
double visibility(const JonesVector& a, const JonesVector& b);

// Phase of the three-vertex Bargmann invariant,
// arg(<a|b><b|c><c|a>), mapped to [0, 2*pi). Gauge invariant and
// cyclic. Throws DegenerateTriple when any pairwise inner product has
// magnitude <= 1e-9 (the phase is numerically meaningless below that).
double pancharatnam_phase(const JonesVector& a, const JonesVector& b,
                          const JonesVector& c);

StokesPoint to_stokes(const JonesVector& a);

// Signed solid angle of the geodesic triangle (p, q, r) on the unit
// sphere, in (-2*pi, 2*pi]. Sign convention: positive when the
// vertices wind clockwise as seen from outside the sphere, fixed so
// that pancharatnam_phase == -omega/2 (mod 2*pi) on the corresponding
// Jones triple. Throws DegenerateTriple for an antipodal vertex pair,
// where the triangle (and the formula) degenerates.
double spherical_triangle_solid_angle(const StokesPoint& p,
                                      const StokesPoint& q,
                                      const StokesPoint& r);

// The three pinhole polarizations of the reference setup, for a linear
// polarizer angle theta on the third pinhole:
//   psi1 = (sqrt(3)|H> + i|V>)/2      (left pinhole)
//   psi2 = (i sqrt(3)|H> + |V>)/2     (right pinhole)
//   psi3 = cos(theta)|H> + sin(theta)|V>   (upper pinhole)
// On the Poincare sphere psi1/psi2 sit at latitude +60/-60 degrees on
// the prime meridian and psi3 on the equator at longitude 2*theta.
std::array<JonesVector, 3> reference_states(double theta);

// Analytic geometric phase of reference_states(theta), defined as the
// Bargmann-invariant phase with the canonical [0, 2*pi) branch. Equals
// canonical(2 * atan2(sin(theta), sqrt(3) * cos(theta))); sweeps 0 to
// 2*pi monotonically as theta runs over [0, pi).
double delta3_reference(double theta);

} // namespace rphase
