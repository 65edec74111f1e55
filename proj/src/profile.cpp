#include "gmenv/profile.hpp"

#include <cmath>
#include <string>

namespace gmenv {

SequenceStats stats_of(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) {
        throw InvalidLength("need at least 2 values, got " +
                            std::to_string(n));
    }
    long double sum = 0.0L;
    for (double v : values) sum += v;
    const double mean = static_cast<double>(sum / static_cast<long double>(n));

    long double sq = 0.0L;
    for (double v : values) {
        const long double d = static_cast<long double>(v) - mean;
        sq += d * d;
    }
    const double variance =
        static_cast<double>(sq / static_cast<long double>(n));
    return {static_cast<int>(n), mean, std::sqrt(variance)};
}

StatProfile::StatProfile(int n, double mu, double sigma)
    : n_(n), mu_(mu), sigma_(sigma) {
    if (n < 2) {
        throw InvalidProfile("n must be >= 2, got " + std::to_string(n));
    }
    if (!std::isfinite(mu) || mu <= 0.0) {
        throw InvalidProfile("mu must be finite and > 0, got " +
                             std::to_string(mu));
    }
    if (!std::isfinite(sigma) || sigma < 0.0) {
        throw InvalidProfile("sigma must be finite and >= 0, got " +
                             std::to_string(sigma));
    }
}

const char* to_string(RegimeTag tag) noexcept {
    switch (tag) {
        case RegimeTag::Degenerate: return "Degenerate";
        case RegimeTag::ForcedPositive: return "ForcedPositive";
        case RegimeTag::Conditional: return "Conditional";
        case RegimeTag::InfeasiblePositive: return "InfeasiblePositive";
    }
    return "?";
}

Regime classify(const StatProfile& profile) {
    const double t = profile.ratio();
    if (profile.sigma() == 0.0) return {RegimeTag::Degenerate, t};
    const double root = std::sqrt(static_cast<double>(profile.n() - 1));
    // The boundary t == 1/sqrt(n-1) belongs to Conditional: the lower
    // product bound is exactly 0 there and is not attained.
    if (t < 1.0 / root) return {RegimeTag::ForcedPositive, t};
    if (t < root) return {RegimeTag::Conditional, t};
    return {RegimeTag::InfeasiblePositive, t};
}

}  // namespace gmenv
