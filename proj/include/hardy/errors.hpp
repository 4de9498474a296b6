#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

/// Base class for every structured rejection raised by this library.
/// The `kind()` string is stable and machine-checkable; the what() text
/// names the violated constraint in human terms.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define HARDY_DEFINE_ERROR(NAME)                                       \
    class NAME : public Error {                                        \
    public:                                                            \
        explicit NAME(const std::string& msg) : Error(#NAME, msg) {}   \
    }

HARDY_DEFINE_ERROR(DimensionError);          // n outside {1,2,...}
HARDY_DEFINE_ERROR(RangeError);              // p, q, beta or gamma outside its admissible range
HARDY_DEFINE_ERROR(ScalingError);            // exponent balance relation violated
HARDY_DEFINE_ERROR(ForwardConstraintError);  // alpha > beta*(p-1)
HARDY_DEFINE_ERROR(AdjointConstraintError);  // (alpha+n)/p - beta <= 0
HARDY_DEFINE_ERROR(DomainError);             // argument outside an operation's domain
HARDY_DEFINE_ERROR(DivergenceError);         // an integral or measure that must be finite is not
HARDY_DEFINE_ERROR(UnsupportedExponentError);// would need (ln r)^k with k >= 2, or a non-elementary power
HARDY_DEFINE_ERROR(DegenerateSubstitutionError); // change of variables collapses (p = 1 forward branch)
HARDY_DEFINE_ERROR(SamplingError);           // Monte Carlo input non-finite or sample budget invalid
HARDY_DEFINE_ERROR(UnsupportedError);        // anything else deliberately out of scope

#undef HARDY_DEFINE_ERROR

} // namespace hardy
