#pragma once

#include <stdexcept>
#include <string>

namespace rphase {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Three states whose Bargmann phase (or solid angle) is undefined:
// a pairwise inner product vanishes, or two Stokes points are antipodal.
struct DegenerateTriple : Error {
    using Error::Error;
};

// The three pinhole positions are collinear; no triangle, no fringes.
struct CollinearPinholes : Error {
    using Error::Error;
};

// An observation point coincides with a source position.
struct GeometryOverlap : Error {
    using Error::Error;
};

struct BadPinholePair : Error {
    using Error::Error;
};

struct GridTooSmall : Error {
    using Error::Error;
};

struct WindowTooSmall : Error {
    using Error::Error;
};

// Demodulation found no fringe at the requested spatial frequency.
struct ZeroAmplitude : Error {
    using Error::Error;
};

struct EmptyImage : Error {
    using Error::Error;
};

// The three ridge-line families are concurrent (geometric phase at a
// multiple of 2*pi); one elemental triangle class collapses to points.
struct DegenerateLattice : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct FileFormatError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace rphase
