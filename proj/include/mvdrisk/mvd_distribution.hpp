#pragma once

#include "mvdrisk/error.hpp"
#include "mvdrisk/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace mvdrisk {

/// Lowest admissible market value decline: the property loses all of its value.
inline constexpr double kMinMvd = -1.0;

/// Which point of a strip stands in for the whole strip in discrete sums.
enum class Representative {
    lower_edge, ///< M_i = origin + i*step
    midpoint,   ///< M_i = origin + (i + 1/2)*step
};

/// Point mass at a single MVD `m` (negative = decline).
struct DiracParams {
    double m = 0.0;

    void validate() const
    {
        detail::require(std::isfinite(m) && m >= kMinMvd, ErrorKind::invalid_argument,
                        "dirac m must be finite and >= -1");
    }
};

/// Normal MVD with standard deviation S_M; mean defaults to zero.
struct NormalParams {
    double mean = 0.0;
    double std_dev = 0.2;

    void validate() const
    {
        detail::require(std::isfinite(mean), ErrorKind::invalid_argument, "normal mean must be finite");
        detail::require(std::isfinite(std_dev) && std_dev > 0.0, ErrorKind::invalid_argument,
                        "normal std_dev must be positive");
    }
};

/// Signed probability masses on equal strips [origin + i*step, origin + (i+1)*step).
struct TabulatedMvd {
    double grid_origin = kMinMvd;
    double step = 0.01;
    std::vector<double> masses;
    Representative representative = Representative::lower_edge;

    std::size_t size() const noexcept { return masses.size(); }

    double lower_edge(std::size_t i) const noexcept
    {
        return grid_origin + static_cast<double>(i) * step;
    }

    double upper_edge(std::size_t i) const noexcept { return lower_edge(i + 1); }

    double midpoint(std::size_t i) const noexcept
    {
        return grid_origin + (static_cast<double>(i) + 0.5) * step;
    }

    double representative_point(std::size_t i) const noexcept
    {
        return representative == Representative::midpoint ? midpoint(i) : lower_edge(i);
    }

    /// Offset of the representative point within a strip, in units of step.
    double representative_offset() const noexcept
    {
        return representative == Representative::midpoint ? 0.5 : 0.0;
    }

    void validate() const
    {
        detail::require(std::isfinite(step) && step > 0.0, ErrorKind::invalid_argument,
                        "tabulated step must be positive");
        detail::require(std::isfinite(grid_origin) && !strictly_below(grid_origin, kMinMvd),
                        ErrorKind::invalid_argument, "tabulated grid_origin must be >= -1");
        for (double mass : masses)
            detail::require(std::isfinite(mass), ErrorKind::invalid_argument,
                            "tabulated masses must be finite");
    }
};

/**
 * A market-value-decline law P(M) supported on [-1, +inf).
 *
 * Continuous variants are hard-truncated at M = -1 without renormalization; the
 * mass a Normal puts below -1 is simply not part of the distribution. A
 * distribution may additionally carry a higher floor and a renormalizing weight,
 * produced by truncate_renormalize().
 *
 * Instances are immutable.
 */
class MvdDistribution {
public:
    using Params = std::variant<DiracParams, NormalParams, TabulatedMvd>;

    explicit MvdDistribution(Params params) : params_(std::move(params))
    {
        std::visit([](const auto& p) { p.validate(); }, params_);
    }

    static MvdDistribution dirac(double m) { return MvdDistribution(DiracParams{m}); }

    static MvdDistribution normal(double std_dev, double mean = 0.0)
    {
        return MvdDistribution(NormalParams{mean, std_dev});
    }

    static MvdDistribution tabulated(TabulatedMvd table) { return MvdDistribution(std::move(table)); }

    const Params& params() const noexcept { return params_; }

    template <typename T>
    bool holds() const noexcept
    {
        return std::holds_alternative<T>(params_);
    }

    /// Lowest M carrying mass: -1 unless truncated higher.
    double support_floor() const noexcept { return floor_; }

    /// Scale applied to the underlying law's mass (1 unless renormalized).
    double weight() const noexcept { return weight_; }

    bool renormalized() const noexcept { return renormalized_; }

    /// Signed mass in [a, b). `b` may be +inf.
    double mass_between(double a, double b) const
    {
        detail::require(!(a > b), ErrorKind::invalid_interval,
                        "mass_between requires a <= b (a=" + format_number(a) + ", b=" + format_number(b) + ")");
        return weight_ * raw_mass_between(a, b);
    }

    /// Density of a continuous variant at `m` (zero below the support floor).
    double density(double m) const
    {
        const auto* normal = std::get_if<NormalParams>(&params_);
        detail::require(normal != nullptr, ErrorKind::unsupported_variant,
                        "density is only defined for continuous variants");
        if (strictly_below(m, floor_))
            return 0.0;
        return weight_ * normal_pdf((m - normal->mean) / normal->std_dev) / normal->std_dev;
    }

    /// Zero mass below `floor`, total mass 1 on [floor, inf), proportional to the original above.
    MvdDistribution truncate_renormalize(double floor) const
    {
        detail::require(std::isfinite(floor) && !strictly_below(floor, kMinMvd), ErrorKind::invalid_argument,
                        "truncation floor must be finite and >= -1");
        const double new_floor = std::max(floor, floor_);
        const double surviving = weight_ * raw_mass_between(new_floor, std::numeric_limits<double>::infinity());
        detail::require(std::isfinite(surviving) && surviving > 0.0, ErrorKind::degenerate_truncation,
                        "no mass survives truncation at " + format_number(floor));
        MvdDistribution result = *this;
        result.floor_ = new_floor;
        result.weight_ = weight_ / surviving;
        result.renormalized_ = true;
        return result;
    }

private:
    double raw_mass_between(double a, double b) const
    {
        const double lo = std::max(a, floor_);
        if (!(b > lo))
            return 0.0;
        return std::visit(
            [&](const auto& p) -> double {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, DiracParams>) {
                    return in_half_open(p.m, lo, b) && !strictly_below(p.m, floor_) ? 1.0 : 0.0;
                } else if constexpr (std::is_same_v<T, NormalParams>) {
                    const double za = (lo - p.mean) / p.std_dev;
                    const double zb = (b - p.mean) / p.std_dev;
                    // Upper-tail form keeps precision when both points sit above the mean.
                    if (za > 0.0)
                        return normal_cdf(-za) - normal_cdf(-zb);
                    return normal_cdf(zb) - normal_cdf(za);
                } else {
                    double sum = 0.0;
                    for (std::size_t i = 0; i < p.size(); ++i) {
                        const double point = p.representative_point(i);
                        if (in_half_open(point, lo, b) && !strictly_below(point, floor_))
                            sum += p.masses[i];
                    }
                    return sum;
                }
            },
            params_);
    }

    Params params_;
    double floor_ = kMinMvd;
    double weight_ = 1.0;
    bool renormalized_ = false;
};

inline double mass_between(const MvdDistribution& dist, double a, double b)
{
    return dist.mass_between(a, b);
}

inline MvdDistribution truncate_renormalize(const MvdDistribution& dist, double floor)
{
    return dist.truncate_renormalize(floor);
}

/// Strip masses of `dist` on `count` strips of width `step` starting at `origin`.
inline TabulatedMvd discretize(const MvdDistribution& dist, double origin, double step, std::size_t count,
                               Representative representative = Representative::lower_edge)
{
    TabulatedMvd table{origin, step, {}, representative};
    table.validate();
    table.masses.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        table.masses.push_back(dist.mass_between(table.lower_edge(i), table.upper_edge(i)));
    return table;
}

} // namespace mvdrisk
