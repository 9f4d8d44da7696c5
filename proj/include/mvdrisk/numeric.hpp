#pragma once

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

namespace mvdrisk {

/// Standard normal CDF.
inline double normal_cdf(double z) noexcept
{
    if (std::isinf(z))
        return z > 0 ? 1.0 : 0.0;
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

/// Standard normal density.
inline double normal_pdf(double z) noexcept
{
    return std::exp(-0.5 * z * z) * (std::numbers::inv_sqrtpi / std::numbers::sqrt2);
}

/// Tolerance used when deciding whether a point lies strictly below a boundary.
/// Grid edges and LVR boundaries that coincide in exact arithmetic (e.g. 0.55 - 1
/// and -0.45) differ by a few ulps in binary; those are treated as coincident.
inline double boundary_snap(double bound) noexcept
{
    return 1e-12 * (1.0 + std::fabs(bound));
}

inline bool strictly_below(double x, double bound) noexcept
{
    if (std::isinf(bound))
        return x < bound;
    return x < bound - boundary_snap(bound);
}

/// x in [lo, hi) with snapped boundaries.
inline bool in_half_open(double x, double lo, double hi) noexcept
{
    return !strictly_below(x, lo) && strictly_below(x, hi);
}

/// Nearest integer n with |value/step - n| below `rel_tol`, or -1 when value is not
/// a grid multiple of step.
inline long long grid_index(double value, double step, double rel_tol = 1e-9) noexcept
{
    const double ratio = value / step;
    const double nearest = std::round(ratio);
    if (std::fabs(ratio - nearest) > rel_tol * (1.0 + std::fabs(ratio)))
        return -1;
    return static_cast<long long>(nearest);
}

/// Decimal rendering with 12 significant digits; -0 is printed as 0.
inline std::string format_number(double value)
{
    if (value == 0.0)
        value = 0.0;
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

/// Rounds to 12 significant digits, so that JSON emitters print the same digits as CSV.
inline double round_to_12_digits(double value)
{
    return std::strtod(format_number(value).c_str(), nullptr);
}

} // namespace mvdrisk
