#pragma once

#include <vector>

#include "gmenv/bounds.hpp"
#include "gmenv/profile.hpp"
#include "gmenv/signed_log.hpp"

namespace gmenv {

/// A constrained critical point of the product: a two-value sequence whose
/// higher value a occurs i times and lower value b occurs j = n-i times.
struct CriticalPoint {
    int type_index;    // i, in [1, n-1]
    int complement;    // j = n - i
    double high_value;  // a = mu + sigma*sqrt(j/i)
    double low_value;   // b = mu - sigma*sqrt(i/j); <= 0 when t >= sqrt(j/i)
    double multiplicity;  // C(n, i) coordinate permutations; exact while it
                          // fits a double, approximate or +inf beyond
};

/// Number of coordinate orderings, C(n, k), as a double.
double binomial(int n, int k);

CriticalPoint critical_point(int type_index, const StatProfile& profile);

/// The product a^i * b^j at the type-i critical point, as sign and log
/// magnitude. The sign is (-1)^j when b < 0.
SignedLog critical_value_log(int type_index, const StatProfile& profile);

/// Linear-space critical value; may overflow/underflow to +-inf/0.
double critical_value(int type_index, const StatProfile& profile);

/// The critical value normalized by mu^n, as a function of t = sigma/mu:
/// (1 + t*sqrt(j/i))^i * (1 - t*sqrt(i/j))^j. Equals 1 at t = 0 and
/// vanishes at t = sqrt(j/i).
double normalized_critical_value(int type_index, int n, double t);

/// d/dt of log of the normalized critical value:
/// -n*t / ((1 + t*sqrt(j/i)) * (1 - t*sqrt(i/j))), defined for
/// 0 <= t < sqrt(j/i); 0 at t = 0.
double normalized_critical_log_derivative(int type_index, int n, double t);

struct LadderEntry {
    int type_index;     // i
    int sign;           // sign of the critical value
    double log_abs;     // log |value|
    double value;       // linear space, +-inf/0 on overflow/underflow
    double normalized;  // value / mu^n
    bool positive;      // the critical point is an all-positive sequence
};

/// All n-1 critical values, ordered by type index. For t < 1/sqrt(n-1)
/// they are strictly decreasing; outside that range no ordering holds and
/// entries with low value <= 0 are flagged not positive.
struct CriticalLadder {
    StatProfile profile;
    std::vector<LadderEntry> entries;
};

/// Throws DegenerateLadder when sigma == 0 (the single critical point is
/// the constant sequence).
CriticalLadder build_ladder(const StatProfile& profile);

}  // namespace gmenv
