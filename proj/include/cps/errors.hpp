#pragma once

#include <stdexcept>
#include <string>

namespace cps {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Basis matrix is not invertible (|det| below threshold).
struct SingularBasis : Error {
    using Error::Error;
};

// Residue operation applied to a scheme/window of the wrong kind.
struct KindMismatch : Error {
    using Error::Error;
};

// Dual character label does not belong to the scheme's frequency module.
struct LabelOutOfModule : Error {
    using Error::Error;
};

// Displacement has no lattice label.
struct DisplacementNotInModule : Error {
    using Error::Error;
};

// Requested sampling region is empty.
struct EmptyRegion : Error {
    using Error::Error;
};

// Operation requires a one-dimensional interval window.
struct WindowNotInterval : Error {
    using Error::Error;
};

// Lattice operation requires a basis that splits into physical and
// internal blocks.
struct SchemeNotSplit : Error {
    using Error::Error;
};

}  // namespace cps
