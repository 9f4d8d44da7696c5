#pragma once

// Test-only reference computations. Nothing here calls into the library's
// quadrature or distribution code, so agreement is an independent check.

#include <cmath>
#include <cstddef>
#include <numbers>

namespace oracle {

inline double gaussian_density(double m, double mean, double sd)
{
    const double z = (m - mean) / sd;
    return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

inline double phi_cdf(double z)
{
    return 0.5 * (1.0 + std::erf(z / std::sqrt(2.0)));
}

/// Composite trapezoid rule with uniform spacing not exceeding `h`.
template <typename F>
double trapezoid(F&& f, double lo, double hi, double h)
{
    if (!(hi > lo))
        return 0.0;
    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / h));
    const double dx = (hi - lo) / static_cast<double>(n);
    double sum = 0.5 * (f(lo) + f(hi));
    for (std::size_t i = 1; i < n; ++i)
        sum += f(lo + static_cast<double>(i) * dx);
    return sum * dx;
}

/// Shortfall integral of a normal MVD over [-1, L-1) by trapezoid at spacing h.
inline double normal_shortfall_trapezoid(double lvr, double sd, double h, double mean = 0.0, double lo = -1.0,
                                         double weight = 1.0)
{
    auto f = [&](double m) { return (lvr - m - 1.0) / lvr * gaussian_density(m, mean, sd); };
    return weight * trapezoid(f, lo, lvr - 1.0, h);
}

/// Same integral in closed form: (1/L)[(L-1-mu)(Phi(zu)-Phi(zl)) + sd(phi(zu)-phi(zl))].
inline double normal_shortfall_closed(double lvr, double sd, double mean = 0.0, double lo = -1.0)
{
    const double hi = lvr - 1.0;
    if (!(hi > lo))
        return 0.0;
    const double zl = (lo - mean) / sd;
    const double zu = (hi - mean) / sd;
    const double pdf_l = std::exp(-0.5 * zl * zl) / std::sqrt(2.0 * std::numbers::pi);
    const double pdf_u = std::exp(-0.5 * zu * zu) / std::sqrt(2.0 * std::numbers::pi);
    return ((lvr - 1.0 - mean) * (phi_cdf(zu) - phi_cdf(zl)) + sd * (pdf_u - pdf_l)) / lvr;
}

} // namespace oracle
