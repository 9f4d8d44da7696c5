#pragma once

#include "mvdrisk/error.hpp"
#include "mvdrisk/mvd_distribution.hpp"
#include "mvdrisk/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace mvdrisk {

inline constexpr const char* kGeneratorLabel = "mt19937_64/box-muller";

struct SimulationSpec {
    MvdDistribution dist;
    double lvr = 1.0;
    double p_a = 0.075;
    std::uint64_t n_trials = 1'000'000;
    std::uint64_t seed = 0;

    void validate() const
    {
        detail::require(std::isfinite(lvr) && lvr > 0.0, ErrorKind::invalid_lvr, "simulation lvr must be positive");
        detail::require(std::isfinite(p_a) && p_a >= 0.0 && p_a <= 1.0, ErrorKind::invalid_argument,
                        "simulation p_a must lie in [0, 1]");
        detail::require(n_trials >= 1, ErrorKind::invalid_argument, "n_trials must be >= 1");
    }
};

struct SimulationResult {
    std::uint64_t n_trials = 0;
    std::uint64_t seed = 0;
    std::string generator = kGeneratorLabel;
    double mean_loss = 0.0;
    double loss_frequency = 0.0;
    double mean_loss_given_loss = 0.0;
    double std_error_mean_loss = 0.0;
    double std_error_loss_frequency = 0.0;
    double std_error_mean_loss_given_loss = 0.0;
};

namespace detail {

/// Uniform on [0, 1) from the top 53 bits; identical on every platform, unlike std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double standard_normal(std::mt19937_64& rng)
{
    const double u1 = 1.0 - uniform01(rng); // (0, 1]
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline double sample_variance(double sum, double sum_sq, double n)
{
    if (n < 2.0)
        return 0.0;
    const double mean = sum / n;
    return std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
}

} // namespace detail

/**
 * Draws MVD outcomes from a distribution.
 *
 * Untruncated normals clip draws below -1 to -1. Distributions renormalized above a
 * floor are sampled by rejection. Tabulated laws are sampled only when their masses
 * form a proper distribution; each draw returns the strip's representative point.
 */
class MvdSampler {
public:
    explicit MvdSampler(const MvdDistribution& dist) : dist_(dist)
    {
        if (const auto* table = std::get_if<TabulatedMvd>(&dist.params())) {
            double total = 0.0;
            for (std::size_t i = 0; i < table->size(); ++i) {
                const double point = table->representative_point(i);
                if (strictly_below(point, dist.support_floor()))
                    continue;
                const double mass = dist.weight() * table->masses[i];
                detail::require(mass >= 0.0, ErrorKind::unsupported_variant,
                                "cannot sample a tabulated distribution with negative masses");
                total += mass;
                cumulative_.push_back(total);
                points_.push_back(point);
            }
            detail::require(std::fabs(total - 1.0) <= 1e-9, ErrorKind::unsupported_variant,
                            "cannot sample a tabulated distribution whose masses sum to " + format_number(total));
        } else if (dist.renormalized() && dist.holds<NormalParams>()) {
            detail::require(1.0 / dist.weight() >= 1e-6, ErrorKind::unsupported_variant,
                            "truncated normal keeps too little mass for rejection sampling");
        }
    }

    double operator()(std::mt19937_64& rng) const
    {
        return std::visit(
            [&](const auto& p) -> double {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, DiracParams>) {
                    return p.m;
                } else if constexpr (std::is_same_v<T, NormalParams>) {
                    if (!dist_.renormalized())
                        return std::max(kMinMvd, p.mean + p.std_dev * detail::standard_normal(rng));
                    for (;;) {
                        const double m = p.mean + p.std_dev * detail::standard_normal(rng);
                        if (!strictly_below(m, dist_.support_floor()))
                            return m;
                    }
                } else {
                    const double u = detail::uniform01(rng) * cumulative_.back();
                    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
                    if (it == cumulative_.end())
                        --it;
                    return points_[static_cast<std::size_t>(it - cumulative_.begin())];
                }
            },
            dist_.params());
    }

private:
    MvdDistribution dist_;
    std::vector<double> cumulative_;
    std::vector<double> points_;
};

/// Monte Carlo estimate of EL, PD_l and LGD_l for one loan; deterministic given the seed.
inline SimulationResult simulate(const SimulationSpec& spec)
{
    spec.validate();
    const MvdSampler sampler(spec.dist);
    std::mt19937_64 rng(spec.seed);

    double sum = 0.0;
    double sum_sq = 0.0;
    std::uint64_t losses = 0;
    for (std::uint64_t trial = 0; trial < spec.n_trials; ++trial) {
        if (!(detail::uniform01(rng) < spec.p_a))
            continue;
        const double m = sampler(rng);
        const double loss = std::max(0.0, (spec.lvr - m - 1.0) / spec.lvr);
        if (loss > 0.0) {
            ++losses;
            sum += loss;
            sum_sq += loss * loss;
        }
    }

    const auto n = static_cast<double>(spec.n_trials);
    const auto hits = static_cast<double>(losses);
    SimulationResult result;
    result.n_trials = spec.n_trials;
    result.seed = spec.seed;
    result.mean_loss = sum / n;
    result.loss_frequency = hits / n;
    result.std_error_mean_loss = std::sqrt(detail::sample_variance(sum, sum_sq, n) / n);
    result.std_error_loss_frequency = std::sqrt(result.loss_frequency * (1.0 - result.loss_frequency) / n);
    if (losses > 0) {
        result.mean_loss_given_loss = sum / hits;
        result.std_error_mean_loss_given_loss = std::sqrt(detail::sample_variance(sum, sum_sq, hits) / hits);
    }
    return result;
}

} // namespace mvdrisk
