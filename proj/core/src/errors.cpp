#include "nslab/errors.hpp"

namespace nslab {

namespace {

const char* reason_name(ConfigError::Reason reason)
{
    switch (reason) {
    case ConfigError::Reason::UnknownKey: return "UnknownKey";
    case ConfigError::Reason::TypeError: return "TypeError";
    case ConfigError::Reason::MissingRequired: return "MissingRequired";
    }
    return "ConfigError";
}

} // namespace

Error::Error(std::string kind, const std::string& message)
    : std::runtime_error(message), kind_(std::move(kind))
{
}

DivergedError::DivergedError(std::size_t step, const std::string& message)
    : Error("DivergedError", message + " (step " + std::to_string(step) + ")"), step_(step)
{
}

ConfigError::ConfigError(Reason reason, std::size_t line, const std::string& message)
    : Error(reason_name(reason),
            line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      reason_(reason), line_(line)
{
}

} // namespace nslab
