#include "gmenv/bounds.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace gmenv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string describe(const StatProfile& p) {
    return "n=" + std::to_string(p.n()) + " mu=" + std::to_string(p.mu()) +
           " sigma=" + std::to_string(p.sigma());
}

/// c1 * c2^(n-1) as sign and log magnitude.
SignedLog two_factor_power(double c1, double c2, int n) {
    return SignedLog::of(c1) * SignedLog::of(c2).pow(n - 1);
}

}  // namespace

SignedLog upper_bound_expression(const StatProfile& profile) {
    const double root = std::sqrt(static_cast<double>(profile.n() - 1));
    return two_factor_power(profile.mu() + profile.sigma() * root,
                            profile.mu() - profile.sigma() / root,
                            profile.n());
}

SignedLog lower_bound_expression(const StatProfile& profile) {
    const double root = std::sqrt(static_cast<double>(profile.n() - 1));
    return two_factor_power(profile.mu() - profile.sigma() * root,
                            profile.mu() + profile.sigma() / root,
                            profile.n());
}

GmBounds product_bounds(const StatProfile& profile) {
    const Regime regime = classify(profile);
    if (regime.tag == RegimeTag::InfeasiblePositive) {
        throw NoPositiveSequence("no positive sequence has profile " +
                                 describe(profile) +
                                 " (sigma/mu >= sqrt(n-1))");
    }

    const SignedLog upper = upper_bound_expression(profile);
    GmBounds out;
    out.regime = regime;
    out.upper_log = upper.log_abs;
    out.upper_product = upper.value();
    out.lower_attained = regime.positivity_forced();

    if (regime.positivity_forced()) {
        const SignedLog lower = lower_bound_expression(profile);
        // sign <= 0 can only happen within rounding of the regime
        // boundary; the clamped value 0 is correct there.
        if (lower.sign > 0) {
            out.lower_log = lower.log_abs;
            out.lower_product = lower.value();
        } else {
            out.lower_log = -kInf;
            out.lower_product = 0.0;
            out.lower_attained = false;
        }
    } else {
        out.lower_log = -kInf;
        out.lower_product = 0.0;
    }
    return out;
}

std::pair<double, double> geometric_mean_bounds(const StatProfile& profile) {
    const GmBounds b = product_bounds(profile);
    const double n = static_cast<double>(profile.n());
    const double lower_gm =
        std::isinf(b.lower_log) ? 0.0 : std::exp(b.lower_log / n);
    return {lower_gm, std::exp(b.upper_log / n)};
}

ExtremalSequence extremal_sequence(const StatProfile& profile,
                                   ExtremalKind kind) {
    const Regime regime = classify(profile);
    if (regime.tag == RegimeTag::InfeasiblePositive) {
        throw NoPositiveSequence("no positive sequence has profile " +
                                 describe(profile) +
                                 " (sigma/mu >= sqrt(n-1))");
    }
    if (kind == ExtremalKind::LowerAttaining &&
        regime.tag == RegimeTag::Conditional) {
        throw InfimumNotAttained(
            "the product infimum 0 is not attained for profile " +
            describe(profile) + " (sigma/mu >= 1/sqrt(n-1))");
    }

    const double root = std::sqrt(static_cast<double>(profile.n() - 1));
    ExtremalSequence out;
    out.kind = kind;
    out.repeated_count = profile.n() - 1;
    if (kind == ExtremalKind::UpperAttaining) {
        out.repeated_value = profile.mu() - profile.sigma() / root;
        out.outlier_value = profile.mu() + profile.sigma() * root;
    } else {
        out.repeated_value = profile.mu() + profile.sigma() / root;
        out.outlier_value = profile.mu() - profile.sigma() * root;
    }
    return out;
}

double am_gm_gap_bound(const StatProfile& profile) {
    return std::sqrt(static_cast<double>(profile.n() - 1)) * profile.sigma();
}

}  // namespace gmenv
