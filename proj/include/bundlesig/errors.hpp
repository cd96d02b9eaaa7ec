#pragma once

#include <stdexcept>
#include <string>

namespace bundlesig {

/// Base of every error raised by the library. Callers that only care about
/// "something went wrong in an evaluation" catch this one.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define BUNDLESIG_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                        \
    public:                                                            \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

BUNDLESIG_DEFINE_ERROR(MixedExactnessError);
BUNDLESIG_DEFINE_ERROR(AmbiguousLift);
BUNDLESIG_DEFINE_ERROR(InvalidCircleMap);
BUNDLESIG_DEFINE_ERROR(DimensionMismatch);
BUNDLESIG_DEFINE_ERROR(InternalConsistency);
BUNDLESIG_DEFINE_ERROR(RelatorViolation);
BUNDLESIG_DEFINE_ERROR(ZeroVector);
BUNDLESIG_DEFINE_ERROR(NotHomogeneous);
BUNDLESIG_DEFINE_ERROR(NotSurjective);
BUNDLESIG_DEFINE_ERROR(DegenerateMap);
BUNDLESIG_DEFINE_ERROR(NotValidated);
BUNDLESIG_DEFINE_ERROR(NotOrientable);
BUNDLESIG_DEFINE_ERROR(ParseError);
BUNDLESIG_DEFINE_ERROR(ConfigError);

#undef BUNDLESIG_DEFINE_ERROR

}  // namespace bundlesig
