#pragma once

#include "mvdrisk/error.hpp"

#include <cmath>
#include <cstddef>
#include <utility>

namespace mvdrisk {

enum class QuadratureMethod { midpoint_rectangle };

struct QuadratureConfig {
    double step = 1e-4;
    QuadratureMethod method = QuadratureMethod::midpoint_rectangle;

    void validate() const
    {
        detail::require(std::isfinite(step) && step > 0.0, ErrorKind::invalid_argument,
                        "quadrature step must be positive");
    }
};

/**
 * Composite midpoint rectangle rule on [lo, hi].
 *
 * The interval is split into the smallest number of equal strips whose width does
 * not exceed `max_step`; the integrand is sampled at each strip centre.
 * Returns 0 for an empty or reversed interval.
 */
template <typename Integrand>
double integrate_midpoint(Integrand&& f, double lo, double hi, double max_step)
{
    if (!(hi > lo))
        return 0.0;
    const auto strips = static_cast<std::size_t>(std::ceil((hi - lo) / max_step - 1e-9));
    const std::size_t n = strips == 0 ? 1 : strips;
    const double h = (hi - lo) / static_cast<double>(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        sum += f(lo + (static_cast<double>(i) + 0.5) * h);
    return sum * h;
}

template <typename Integrand>
double integrate(Integrand&& f, double lo, double hi, const QuadratureConfig& quad)
{
    switch (quad.method) {
    case QuadratureMethod::midpoint_rectangle:
        break;
    }
    return integrate_midpoint(std::forward<Integrand>(f), lo, hi, quad.step);
}

} // namespace mvdrisk
