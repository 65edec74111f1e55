#include "gmenv/ladder.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gmenv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_type_index(int i, int n) {
    if (i < 1 || i > n - 1) {
        throw InvalidTypeIndex("type index must be in [1, n-1], got i=" +
                               std::to_string(i) + " for n=" +
                               std::to_string(n));
    }
}

}  // namespace

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    if (k <= 64) {
        long double r = 1.0L;
        for (int step = 1; step <= k; ++step) {
            r *= static_cast<long double>(n - k + step);
            r /= static_cast<long double>(step);
        }
        const long double snapped = roundl(r);
        return static_cast<double>(snapped);
    }
    const double lg = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                      std::lgamma(n - k + 1.0);
    const double v = std::exp(lg);
    // Counts below 2^53 are integers; snap away the lgamma rounding.
    return v < 9.007199254740992e15 ? std::round(v) : v;
}

CriticalPoint critical_point(int type_index, const StatProfile& profile) {
    const int n = profile.n();
    check_type_index(type_index, n);
    const int j = n - type_index;
    const double i_d = static_cast<double>(type_index);
    const double j_d = static_cast<double>(j);
    CriticalPoint out;
    out.type_index = type_index;
    out.complement = j;
    out.high_value = profile.mu() + profile.sigma() * std::sqrt(j_d / i_d);
    out.low_value = profile.mu() - profile.sigma() * std::sqrt(i_d / j_d);
    out.multiplicity = binomial(n, type_index);
    return out;
}

SignedLog critical_value_log(int type_index, const StatProfile& profile) {
    const CriticalPoint cp = critical_point(type_index, profile);
    return SignedLog::of(cp.high_value).pow(cp.type_index) *
           SignedLog::of(cp.low_value).pow(cp.complement);
}

double critical_value(int type_index, const StatProfile& profile) {
    return critical_value_log(type_index, profile).value();
}

double normalized_critical_value(int type_index, int n, double t) {
    check_type_index(type_index, n);
    if (!(t >= 0.0)) {
        throw OutOfDomain("t must be >= 0, got " + std::to_string(t));
    }
    const double i_d = static_cast<double>(type_index);
    const double j_d = static_cast<double>(n - type_index);
    const SignedLog p = SignedLog::of(1.0 + t * std::sqrt(j_d / i_d))
                            .pow(type_index) *
                        SignedLog::of(1.0 - t * std::sqrt(i_d / j_d))
                            .pow(n - type_index);
    return p.value();
}

double normalized_critical_log_derivative(int type_index, int n, double t) {
    check_type_index(type_index, n);
    const double i_d = static_cast<double>(type_index);
    const double j_d = static_cast<double>(n - type_index);
    const double zero_at = std::sqrt(j_d / i_d);
    if (!(t >= 0.0) || t >= zero_at) {
        throw OutOfDomain("t must lie in [0, sqrt(j/i)) = [0, " +
                          std::to_string(zero_at) + "), got " +
                          std::to_string(t));
    }
    if (t == 0.0) return 0.0;
    const double denom =
        (1.0 + t * std::sqrt(j_d / i_d)) * (1.0 - t * std::sqrt(i_d / j_d));
    if (denom <= 0.0) return -kInf;  // only within rounding of the zero
    return -static_cast<double>(n) * t / denom;
}

CriticalLadder build_ladder(const StatProfile& profile) {
    if (profile.sigma() == 0.0) {
        throw DegenerateLadder(
            "sigma = 0 has the single critical point (mu,...,mu)");
    }
    const int n = profile.n();
    const double n_log_mu = static_cast<double>(n) * std::log(profile.mu());

    CriticalLadder ladder{profile, {}};
    ladder.entries.reserve(static_cast<std::size_t>(n) - 1);
    for (int i = 1; i <= n - 1; ++i) {
        const CriticalPoint cp = critical_point(i, profile);
        const SignedLog v = critical_value_log(i, profile);
        LadderEntry e;
        e.type_index = i;
        e.sign = v.sign;
        e.log_abs = v.log_abs;
        e.value = v.value();
        e.normalized =
            v.sign == 0 ? 0.0 : v.sign * std::exp(v.log_abs - n_log_mu);
        e.positive = cp.low_value > 0.0;
        ladder.entries.push_back(e);
    }

    // For t < 1/sqrt(n-1) every value is positive and the sequence is
    // strictly decreasing in i; a violation beyond rounding noise means a
    // broken invariant, not bad input.
    if (classify(profile).tag == RegimeTag::ForcedPositive) {
        for (std::size_t k = 0; k + 1 < ladder.entries.size(); ++k) {
            const LadderEntry& a = ladder.entries[k];
            const LadderEntry& b = ladder.entries[k + 1];
            const double slack =
                64.0 * std::numeric_limits<double>::epsilon() *
                (1.0 + std::abs(a.log_abs));
            if (a.sign != 1 || b.sign != 1 || b.log_abs > a.log_abs + slack) {
                throw std::logic_error(
                    "critical values not decreasing at type " +
                    std::to_string(a.type_index));
            }
        }
    }
    return ladder;
}

}  // namespace gmenv
