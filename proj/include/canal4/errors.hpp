#pragma once

#include <stdexcept>
#include <string>

namespace canal4 {

// Base class for every failure the library reports. All error types carry a
// human-readable message; a few carry the index that triggered them.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Gram-Schmidt residual fell below tolerance at step k (1-based).
struct RankDeficient : Error {
    explicit RankDeficient(int step)
        : Error("gram_schmidt: rank deficient at step " + std::to_string(step)), k(step) {}
    int k;
};

struct NotOrthonormal : Error {
    using Error::Error;
};

struct InvalidSpec : Error {
    using Error::Error;
};

struct OutOfDomain : Error {
    using Error::Error;
};

struct DegenerateSpeed : Error {
    using Error::Error;
};

struct NotUnitSpeed : Error {
    using Error::Error;
};

struct StepTooLarge : Error {
    using Error::Error;
};

// Frenet frame does not exist: Gram-Schmidt of (gamma', gamma'', gamma''')
// lost rank at step k (k=2: curvature vanishes, k=3: planar/torsion-free).
struct FrenetUndefined : Error {
    explicit FrenetUndefined(int step)
        : Error("Frenet frame undefined: derivative rank lost at step " + std::to_string(step)),
          k(step) {}
    int k;
};

struct GimbalLock : Error {
    using Error::Error;
};

struct MismatchedTangent : Error {
    using Error::Error;
};

struct NonpositiveRadius : Error {
    using Error::Error;
};

struct Irregular : Error {
    using Error::Error;
};

struct WrongMode : Error {
    using Error::Error;
};

struct TubeSingular : Error {
    using Error::Error;
};

struct NonOrthogonalPatch : Error {
    using Error::Error;
};

struct FormulaMismatch : Error {
    using Error::Error;
};

struct GridTooSmall : Error {
    using Error::Error;
};

struct NotATube : Error {
    using Error::Error;
};

struct BranchViolation : Error {
    using Error::Error;
};

struct InvalidMesh : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace canal4
