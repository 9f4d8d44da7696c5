#pragma once

#include "mvdrisk/el_curve.hpp"
#include "mvdrisk/error.hpp"
#include "mvdrisk/mvd_distribution.hpp"
#include "mvdrisk/numeric.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mvdrisk {

/// Grid and arrears PD used when recovering P(M) from an EL curve. LVR and MVD share one step.
struct InversionConfig {
    double step = 0.01;
    double p_a = 0.10;
    double max_lvr = 1.80;
    Representative representative = Representative::lower_edge;

    void validate() const
    {
        detail::require(std::isfinite(step) && step > 0.0, ErrorKind::invalid_argument,
                        "inversion step must be positive");
        detail::require(std::isfinite(p_a) && p_a >= 0.0 && p_a <= 1.0, ErrorKind::invalid_argument,
                        "inversion p_a must lie in [0, 1]");
        detail::require(std::isfinite(max_lvr) && grid_index(max_lvr, step) > 0, ErrorKind::invalid_argument,
                        "max_lvr must be a positive integer multiple of step");
    }

    std::size_t strip_count() const { return static_cast<std::size_t>(grid_index(max_lvr, step)); }
};

/// Signed strip masses recovered by inversion, on M in [-1, max_lvr - 1).
struct ImpliedMvd {
    TabulatedMvd table;

    std::size_t negative_strips() const
    {
        std::size_t count = 0;
        for (double mass : table.masses)
            count += mass < 0.0 ? 1 : 0;
        return count;
    }

    double density(std::size_t i) const { return table.masses[i] / table.step; }
};

namespace detail {

/// Index of grid_origin relative to M = -1, in strips.
inline long long strip_offset(const TabulatedMvd& pm)
{
    const long long offset = grid_index(pm.grid_origin - kMinMvd, pm.step);
    require(offset >= 0, ErrorKind::grid_mismatch,
            "grid_origin " + format_number(pm.grid_origin) + " is not aligned with step " + format_number(pm.step));
    return offset;
}

inline long long lvr_index(double lvr, double step)
{
    require(std::isfinite(lvr) && lvr >= 0.0, ErrorKind::invalid_lvr, "lvr must be non-negative");
    const long long k = grid_index(lvr, step);
    require(k >= 0, ErrorKind::grid_mismatch,
            "lvr " + format_number(lvr) + " is not a multiple of step " + format_number(step));
    return k;
}

} // namespace detail

/**
 * Discrete EL on an aligned strip grid:
 *   EL(L_k) = p_a * sum over strips with M_i < L_k - 1 of ((L_k - M_i - 1)/L_k) * mass_i
 * with L_k = k * step. The coefficient is evaluated in strip units, (k - j - offset)/k,
 * where j is the strip index measured from M = -1. EL(0) is 0.
 */
inline double forward_discrete(const TabulatedMvd& pm, double p_a, double lvr)
{
    pm.validate();
    const long long k = detail::lvr_index(lvr, pm.step);
    const long long offset = detail::strip_offset(pm);
    if (k == 0)
        return 0.0;
    const double rep = pm.representative_offset();
    const auto kd = static_cast<double>(k);
    double sum = 0.0;
    for (std::size_t i = 0; i < pm.size(); ++i) {
        const long long j = offset + static_cast<long long>(i);
        if (j >= k)
            break;
        sum += (kd - static_cast<double>(j) - rep) / kd * pm.masses[i];
    }
    return p_a * sum;
}

/**
 * Recovers strip masses on [-1, max_lvr - 1) whose discrete EL reproduces `curve`
 * at every L_k = k * step, k = 1..K.
 *
 * EL(L_k) depends only on strips j < k, and strip k-1 enters with coefficient
 * (1 - offset)/k > 0, so the system is lower triangular and each new mass follows
 * from the previous ones by forward substitution. No smoothing or sign projection
 * is applied; slope discontinuities in the curve show up as single-strip spikes,
 * which can be negative.
 */
inline ImpliedMvd invert_el_to_pm(const ElCurve& curve, const InversionConfig& cfg)
{
    cfg.validate();
    detail::require(cfg.p_a > 0.0, ErrorKind::degenerate, "inversion needs p_a > 0");

    const std::size_t strips = cfg.strip_count();
    ImpliedMvd result{TabulatedMvd{kMinMvd, cfg.step, std::vector<double>(strips, 0.0), cfg.representative}};
    auto& masses = result.table.masses;
    const double rep = result.table.representative_offset();

    for (std::size_t k = 1; k <= strips; ++k) {
        const auto kd = static_cast<double>(k);
        const double lvr = kd * cfg.step;
        const double target = curve(lvr) / cfg.p_a;
        double known = 0.0;
        for (std::size_t j = 0; j + 1 < k; ++j)
            known += (kd - static_cast<double>(j) - rep) / kd * masses[j];
        const double newest = (1.0 - rep) / kd;
        detail::require(newest > 0.0, ErrorKind::degenerate, "zero coefficient for newest strip");
        masses[k - 1] = (target - known) / newest;
    }
    return result;
}

/// p_a times the cumulative signed mass below L - 1 at each grid LVR; may exceed 1 for signed inputs.
inline std::vector<double> implied_pd_curve(const TabulatedMvd& pm, double p_a, std::span<const double> lvr_grid)
{
    pm.validate();
    const long long offset = detail::strip_offset(pm);
    std::vector<double> pd;
    pd.reserve(lvr_grid.size());
    for (double lvr : lvr_grid) {
        const long long k = detail::lvr_index(lvr, pm.step);
        double cumulative = 0.0;
        for (std::size_t i = 0; i < pm.size() && offset + static_cast<long long>(i) < k; ++i)
            cumulative += pm.masses[i];
        pd.push_back(p_a * cumulative);
    }
    return pd;
}

inline std::vector<double> implied_pd_curve(const ImpliedMvd& pm, double p_a, std::span<const double> lvr_grid)
{
    return implied_pd_curve(pm.table, p_a, lvr_grid);
}

} // namespace mvdrisk
