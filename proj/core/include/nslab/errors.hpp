/// @file errors.hpp
/// @brief Exception hierarchy shared by every nslab module.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nslab {

/// Base class for all library errors. `kind()` is a stable machine-readable tag.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message);
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define NSLAB_DECLARE_ERROR(Name)                                            \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& message) : Error(#Name, message) {} \
    }

// core-fields
NSLAB_DECLARE_ERROR(InvalidGrid);
NSLAB_DECLARE_ERROR(InvalidField);
NSLAB_DECLARE_ERROR(GridMismatch);
// basis-galerkin
NSLAB_DECLARE_ERROR(EmptyBasis);
NSLAB_DECLARE_ERROR(InvalidCoefficients);
// assembly
NSLAB_DECLARE_ERROR(NotElliptic);
NSLAB_DECLARE_ERROR(AliasingError);
NSLAB_DECLARE_ERROR(NonSolenoidalInput);
// integrate
NSLAB_DECLARE_ERROR(InvalidConfig);
// quadform
NSLAB_DECLARE_ERROR(DimensionError);
// restrict
NSLAB_DECLARE_ERROR(DegeneratePlane);
NSLAB_DECLARE_ERROR(UnsupportedOrientation);
// uniqueness
NSLAB_DECLARE_ERROR(IncompatibleRuns);
NSLAB_DECLARE_ERROR(MisalignedSeries);
NSLAB_DECLARE_ERROR(InvalidArgument);
// gns
NSLAB_DECLARE_ERROR(OutOfRange);
NSLAB_DECLARE_ERROR(DegenerateBalance);
NSLAB_DECLARE_ERROR(ZeroFieldRatio);
// cli-io
NSLAB_DECLARE_ERROR(IoError);

#undef NSLAB_DECLARE_ERROR

/// Raised by the time integrator when the state stops being finite.
class DivergedError : public Error {
public:
    DivergedError(std::size_t step, const std::string& message);
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// Configuration error naming the offending line (0 when not line-specific).
class ConfigError : public Error {
public:
    enum class Reason { UnknownKey, TypeError, MissingRequired };
    ConfigError(Reason reason, std::size_t line, const std::string& message);
    Reason reason() const noexcept { return reason_; }
    std::size_t line() const noexcept { return line_; }

private:
    Reason reason_;
    std::size_t line_;
};

} // namespace nslab
