#pragma once

#include "mvdrisk/error.hpp"
#include "mvdrisk/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace mvdrisk {

/**
 * EL(L) = min[cap, pd_scale * L^pd_exponent * max(0, (L + mvd - 1) / L)]
 *
 * A power-law PD multiplied by the single-valued LGD of a fixed decline `mvd`
 * (a positive fraction), with the cap applied to the whole product. The defaults
 * are the reference example: 0.015, 20, 40% and 100%.
 */
struct ParametricElCurve {
    double pd_scale = 0.015;
    double pd_exponent = 20.0;
    double mvd = 0.40;
    double cap = 1.0;

    void validate() const
    {
        detail::require(std::isfinite(pd_scale) && pd_scale >= 0.0, ErrorKind::invalid_argument,
                        "pd_scale must be >= 0");
        detail::require(std::isfinite(pd_exponent) && pd_exponent >= 0.0, ErrorKind::invalid_argument,
                        "pd_exponent must be >= 0");
        detail::require(std::isfinite(mvd) && mvd >= 0.0 && mvd <= 1.0, ErrorKind::invalid_argument,
                        "mvd must lie in [0, 1]");
        detail::require(std::isfinite(cap) && cap > 0.0 && cap <= 1.0, ErrorKind::invalid_argument,
                        "cap must lie in (0, 1]");
    }

    double operator()(double lvr) const
    {
        const double lgd = std::max(0.0, (lvr + mvd - 1.0) / lvr);
        if (lgd == 0.0)
            return 0.0;
        return std::min(cap, pd_scale * std::pow(lvr, pd_exponent) * lgd);
    }
};

/// Piecewise-linear EL through (lvr_grid[i], el_values[i]); no extrapolation.
struct TabulatedElCurve {
    std::vector<double> lvr_grid;
    std::vector<double> el_values;

    void validate() const
    {
        detail::require(lvr_grid.size() == el_values.size(), ErrorKind::invalid_argument,
                        "tabulated EL curve needs equal-length lvr and el arrays");
        detail::require(!lvr_grid.empty(), ErrorKind::invalid_argument, "tabulated EL curve is empty");
        for (std::size_t i = 0; i < lvr_grid.size(); ++i) {
            detail::require(std::isfinite(lvr_grid[i]) && std::isfinite(el_values[i]),
                            ErrorKind::invalid_argument, "tabulated EL curve values must be finite");
            detail::require(i == 0 || lvr_grid[i] > lvr_grid[i - 1], ErrorKind::invalid_argument,
                            "tabulated EL curve lvr grid must be strictly increasing");
        }
    }

    double operator()(double lvr) const
    {
        const double front = lvr_grid.front();
        const double back = lvr_grid.back();
        if (strictly_below(lvr, front) || strictly_below(back, lvr))
            detail::fail(ErrorKind::out_of_range, "lvr " + format_number(lvr) + " outside tabulated EL range [" +
                                                      format_number(front) + ", " + format_number(back) + "]");
        const double x = std::clamp(lvr, front, back);
        auto upper = std::upper_bound(lvr_grid.begin(), lvr_grid.end(), x);
        if (upper == lvr_grid.end())
            return el_values.back();
        const auto hi = static_cast<std::size_t>(std::distance(lvr_grid.begin(), upper));
        if (hi == 0)
            return el_values.front();
        const std::size_t lo = hi - 1;
        const double t = (x - lvr_grid[lo]) / (lvr_grid[hi] - lvr_grid[lo]);
        return el_values[lo] + t * (el_values[hi] - el_values[lo]);
    }
};

/// Target expected-loss curve as a function of LVR.
class ElCurve {
public:
    using Params = std::variant<ParametricElCurve, TabulatedElCurve>;

    ElCurve(ParametricElCurve curve) : params_(curve) { curve.validate(); }

    ElCurve(TabulatedElCurve curve) : params_(std::move(curve))
    {
        std::get<TabulatedElCurve>(params_).validate();
    }

    const Params& params() const noexcept { return params_; }

    double operator()(double lvr) const
    {
        detail::require(std::isfinite(lvr) && lvr > 0.0, ErrorKind::invalid_lvr,
                        "EL curve evaluated at non-positive lvr " + format_number(lvr));
        return std::visit([lvr](const auto& c) { return c(lvr); }, params_);
    }

private:
    Params params_;
};

inline double eval_el(const ElCurve& curve, double lvr)
{
    return curve(lvr);
}

} // namespace mvdrisk
