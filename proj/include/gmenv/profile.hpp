#pragma once

#include <span>
#include <vector>

#include "gmenv/errors.hpp"

namespace gmenv {

/// Raw summary statistics of a sequence, population convention: the
/// variance divides by n, not n-1. The mean may be any real here; the
/// positive-mean requirement belongs to StatProfile.
struct SequenceStats {
    int n = 0;
    double mean = 0.0;
    double stddev = 0.0;
};

/// Two-pass mean and population standard deviation.
/// Throws InvalidLength for fewer than 2 values.
SequenceStats stats_of(std::span<const double> values);

/// The (n, mu, sigma) triple that parameterizes every bound in this
/// library. Construction enforces n >= 2, mu > 0, sigma >= 0, all finite.
class StatProfile {
public:
    StatProfile(int n, double mu, double sigma);

    /// Validating conversion from raw statistics.
    static StatProfile from_stats(const SequenceStats& stats) {
        return StatProfile(stats.n, stats.mean, stats.stddev);
    }

    int n() const noexcept { return n_; }
    double mu() const noexcept { return mu_; }
    double sigma() const noexcept { return sigma_; }

    /// Coefficient of variation t = sigma/mu, the sole parameter besides n
    /// that the normalized bounds depend on.
    double ratio() const noexcept { return sigma_ / mu_; }

private:
    int n_;
    double mu_;
    double sigma_;
};

enum class RegimeTag {
    Degenerate,          // sigma == 0: the only sequence is constant
    ForcedPositive,      // t < 1/sqrt(n-1): every real sequence is positive
    Conditional,         // 1/sqrt(n-1) <= t < sqrt(n-1): positive sequences
                         // exist, the infimum product 0 is not attained
    InfeasiblePositive,  // t >= sqrt(n-1): no positive sequence exists
};

const char* to_string(RegimeTag tag) noexcept;

struct Regime {
    RegimeTag tag;
    double ratio;  // t = sigma/mu

    /// True when every sequence with this profile is automatically positive.
    bool positivity_forced() const noexcept {
        return tag == RegimeTag::Degenerate || tag == RegimeTag::ForcedPositive;
    }
};

Regime classify(const StatProfile& profile);

}  // namespace gmenv
