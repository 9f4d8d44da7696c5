#pragma once

#include <stdexcept>
#include <string>

namespace mvdrisk {

enum class ErrorKind {
    invalid_argument,
    invalid_interval,
    invalid_lvr,
    degenerate_truncation,
    out_of_range,
    grid_mismatch,
    degenerate,
    unsupported_variant,
    config,
};

inline const char* to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::invalid_interval: return "invalid-interval";
    case ErrorKind::invalid_lvr: return "invalid-lvr";
    case ErrorKind::degenerate_truncation: return "degenerate-truncation";
    case ErrorKind::out_of_range: return "out-of-range";
    case ErrorKind::grid_mismatch: return "grid-mismatch";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::unsupported_variant: return "unsupported-variant";
    case ErrorKind::config: return "config";
    }
    return "unknown";
}

/// Single exception type for the library; `kind()` tells callers which contract failed.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

namespace detail {

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what)
{
    throw Error(kind, what);
}

inline void require(bool condition, ErrorKind kind, const std::string& what)
{
    if (!condition)
        fail(kind, what);
}

} // namespace detail
} // namespace mvdrisk
