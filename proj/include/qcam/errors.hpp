#pragma once
#include <stdexcept>
#include <string>

// Error taxonomy for the qcam library.  Every failure mode that callers can
// meaningfully react to gets its own type; all derive from qcam::Error so a
// blanket catch is still possible (the CLI maps Error -> exit code 1 and
// ConfigError -> exit code 2).

namespace qcam {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

struct NotHermitianError : Error {
    using Error::Error;
};

struct NotPSDError : Error {
    using Error::Error;
};

struct NotAStateError : Error {
    using Error::Error;
};

struct BasisNotOrthonormalError : Error {
    using Error::Error;
};

struct NumericalError : Error {
    using Error::Error;
};

struct UnknownModeError : Error {
    using Error::Error;
};

struct ModesNotSymmetricError : Error {
    using Error::Error;
};

struct NotTracePreservingError : Error {
    using Error::Error;
};

struct TooLargeError : Error {
    using Error::Error;
};

struct AsymmetricInputError : Error {
    using Error::Error;
};

struct StepTooLargeError : Error {
    using Error::Error;
};

struct InvalidWeightError : Error {
    using Error::Error;
};

struct UnsupportedCombinationError : Error {
    using Error::Error;
};

// Configuration / user-input problems; message always names the offending field.
struct ConfigError : Error {
    std::string field;
    ConfigError(const std::string& f, const std::string& msg)
        : Error("config field '" + f + "': " + msg), field(f) {}
};

}  // namespace qcam
