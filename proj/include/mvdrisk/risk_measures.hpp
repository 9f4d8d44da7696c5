#pragma once

#include "mvdrisk/error.hpp"
#include "mvdrisk/mvd_distribution.hpp"
#include "mvdrisk/numeric.hpp"
#include "mvdrisk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace mvdrisk {

/// Loan-level inputs that do not depend on LVR.
struct LoanContext {
    double p_a = 0.075;    ///< arrears-default probability
    double lgd_min = 0.0;  ///< floor used only by lgd_single

    void validate() const
    {
        detail::require(std::isfinite(p_a) && p_a >= 0.0 && p_a <= 1.0, ErrorKind::invalid_argument,
                        "p_a must lie in [0, 1]");
        detail::require(std::isfinite(lgd_min) && lgd_min >= 0.0 && lgd_min <= 1.0,
                        ErrorKind::invalid_argument, "lgd_min must lie in [0, 1]");
    }
};

/// Below this liquidation mass, LGD_l is reported as zero.
inline constexpr double kDefaultZeroMassEpsilon = 1e-12;

namespace detail {

inline void require_positive_lvr(double lvr)
{
    require(std::isfinite(lvr) && lvr > 0.0, ErrorKind::invalid_lvr,
            "lvr must be positive (got " + format_number(lvr) + ")");
}

inline void require_nonnegative_lvr(double lvr)
{
    require(std::isfinite(lvr) && lvr >= 0.0, ErrorKind::invalid_lvr,
            "lvr must be non-negative (got " + format_number(lvr) + ")");
}

/// Integral of ((L - M - 1)/L) P(M) over [floor, L - 1), before any p_a factor.
inline double shortfall_integral(double lvr, const MvdDistribution& dist, const QuadratureConfig& quad)
{
    const double upper = lvr - 1.0;
    const double lower = dist.support_floor();
    const double weight = dist.weight();
    if (!strictly_below(lower, upper))
        return 0.0;
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, DiracParams>) {
                if (!in_half_open(p.m, lower, upper))
                    return 0.0;
                return weight * (lvr - p.m - 1.0) / lvr;
            } else if constexpr (std::is_same_v<T, NormalParams>) {
                auto integrand = [&](double m) { return (lvr - m - 1.0) / lvr * dist.density(m); };
                return integrate(integrand, lower, upper, quad);
            } else {
                double sum = 0.0;
                for (std::size_t i = 0; i < p.size(); ++i) {
                    const double point = p.representative_point(i);
                    if (in_half_open(point, lower, upper))
                        sum += (lvr - point - 1.0) / lvr * p.masses[i];
                }
                return weight * sum;
            }
        },
        dist.params());
}

} // namespace detail

/// Single-valued LGD for a fixed decline m: max[lgd_min, (L - m - 1)/L], capped at 1.
inline double lgd_single(double lvr, double m, double lgd_min)
{
    detail::require_positive_lvr(lvr);
    detail::require(std::isfinite(m) && m >= kMinMvd, ErrorKind::invalid_argument, "m must be >= -1");
    detail::require(lgd_min >= 0.0 && lgd_min <= 1.0, ErrorKind::invalid_argument, "lgd_min must lie in [0, 1]");
    return std::min(1.0, std::max(lgd_min, (lvr - m - 1.0) / lvr));
}

/// Arrears-framework LGD: expected shortfall over the MVD law. Defined as 0 at lvr = 0.
inline double lgd_arrears(double lvr, const MvdDistribution& dist, const QuadratureConfig& quad = {})
{
    detail::require_nonnegative_lvr(lvr);
    quad.validate();
    if (lvr == 0.0)
        return 0.0;
    return detail::shortfall_integral(lvr, dist, quad);
}

/// EL = p_a * LGD_a; identical in both frameworks. Defined as 0 at lvr = 0.
inline double expected_loss(double lvr, const MvdDistribution& dist, const LoanContext& ctx,
                            const QuadratureConfig& quad = {})
{
    ctx.validate();
    return ctx.p_a * lgd_arrears(lvr, dist, quad);
}

/// Liquidation-framework PD: p_a times the mass with M < L - 1.
inline double pd_liquidation(double lvr, const MvdDistribution& dist, const LoanContext& ctx)
{
    detail::require_positive_lvr(lvr);
    ctx.validate();
    return ctx.p_a * dist.mass_between(kMinMvd, lvr - 1.0);
}

/// Liquidation-framework LGD: EL / PD_l, reported as 0 where PD_l vanishes.
inline double lgd_liquidation(double lvr, const MvdDistribution& dist, const QuadratureConfig& quad = {},
                              double zero_mass_epsilon = kDefaultZeroMassEpsilon)
{
    detail::require_positive_lvr(lvr);
    quad.validate();
    const double mass = dist.mass_between(kMinMvd, lvr - 1.0);
    if (!(mass > zero_mass_epsilon))
        return 0.0;
    return detail::shortfall_integral(lvr, dist, quad) / mass;
}

struct RiskRow {
    double lvr = 0.0;
    double el = 0.0;
    double lgd_a = 0.0;
    double pd_l = 0.0;
    double lgd_l = 0.0;
};

/// EL, LGD_a, PD_l and LGD_l tabulated over an LVR grid for one distribution and one p_a.
struct RiskCurve {
    std::vector<double> lvr_grid;
    std::vector<RiskRow> rows;
};

inline RiskRow risk_row(double lvr, const MvdDistribution& dist, const LoanContext& ctx,
                        const QuadratureConfig& quad, double zero_mass_epsilon = kDefaultZeroMassEpsilon)
{
    detail::require_positive_lvr(lvr);
    const double shortfall = detail::shortfall_integral(lvr, dist, quad);
    const double mass = dist.mass_between(kMinMvd, lvr - 1.0);
    RiskRow row;
    row.lvr = lvr;
    row.lgd_a = shortfall;
    row.el = ctx.p_a * shortfall;
    row.pd_l = ctx.p_a * mass;
    row.lgd_l = mass > zero_mass_epsilon ? shortfall / mass : 0.0;
    return row;
}

inline RiskCurve risk_curve(std::span<const double> lvr_grid, const MvdDistribution& dist, const LoanContext& ctx,
                            const QuadratureConfig& quad = {},
                            double zero_mass_epsilon = kDefaultZeroMassEpsilon)
{
    ctx.validate();
    quad.validate();
    for (std::size_t i = 0; i < lvr_grid.size(); ++i) {
        detail::require(std::isfinite(lvr_grid[i]) && lvr_grid[i] > 0.0, ErrorKind::invalid_lvr,
                        "lvr grid point " + std::to_string(i) + " must be positive (got " +
                            format_number(lvr_grid[i]) + ")");
        detail::require(i == 0 || lvr_grid[i] > lvr_grid[i - 1], ErrorKind::invalid_argument,
                        "lvr grid must be strictly increasing at index " + std::to_string(i));
    }

    RiskCurve curve;
    curve.lvr_grid.assign(lvr_grid.begin(), lvr_grid.end());
    curve.rows.reserve(lvr_grid.size());
    for (double lvr : lvr_grid) {
        try {
            curve.rows.push_back(risk_row(lvr, dist, ctx, quad, zero_mass_epsilon));
        } catch (const Error& e) {
            throw Error(e.kind(), "at lvr=" + format_number(lvr) + ": " + e.what());
        }
    }
    return curve;
}

} // namespace mvdrisk
