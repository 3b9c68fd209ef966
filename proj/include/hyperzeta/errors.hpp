#pragma once

#include <stdexcept>
#include <string>

namespace hyperzeta {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// special-function domain violations
struct PoleError : Error { using Error::Error; };
struct BranchCutError : Error { using Error::Error; };
struct ZeroBaseError : Error { using Error::Error; };
struct IntegerArgumentError : Error { using Error::Error; };

// distribution layer
struct SingularPointError : Error { using Error::Error; };
struct SlowDecayError : Error { using Error::Error; };
struct UnsupportedFamilyError : Error { using Error::Error; };
struct NonIntegerOrderError : Error { using Error::Error; };

// quadrature
struct MaxDepthError : Error { using Error::Error; };
struct DivergenceError : Error { using Error::Error; };

// series
struct ConvergenceRegionError : Error { using Error::Error; };
struct TailToleranceError : Error { using Error::Error; };

// evaluation frontend
struct ParameterError : Error { using Error::Error; };
struct DisagreementError : Error { using Error::Error; };

// Raised when an evaluation lands on (or within tolerance of) a genuine pole.
// Carries enough payload for callers to report the pole instead of a value.
struct AtPoleError : Error {
    double pole;
    double residue;
    AtPoleError(const std::string& msg, double pole_, double residue_)
        : Error(msg), pole(pole_), residue(residue_) {}
};

} // namespace hyperzeta
