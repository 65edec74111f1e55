#pragma once

#include <utility>
#include <vector>

#include "gmenv/profile.hpp"
#include "gmenv/signed_log.hpp"

namespace gmenv {

/// Sharp bounds on the product x_1...x_n over all sequences with a given
/// profile. Logs are computed as sums of factor logs, never by taking the
/// log of the evaluated product, so they stay meaningful when the linear
/// values overflow or underflow.
struct GmBounds {
    double lower_product;  // >= 0; clamped to 0 in the Conditional regime
    double upper_product;
    double lower_log;  // -inf when lower_product == 0
    double upper_log;
    bool lower_attained;  // true exactly in Degenerate and ForcedPositive
    Regime regime;
};

/// The raw upper-bound expression (mu + sigma*sqrt(n-1)) * (mu - sigma/sqrt(n-1))^(n-1).
SignedLog upper_bound_expression(const StatProfile& profile);

/// The raw lower-bound expression (mu - sigma*sqrt(n-1)) * (mu + sigma/sqrt(n-1))^(n-1),
/// unclamped: negative in the Conditional regime.
SignedLog lower_bound_expression(const StatProfile& profile);

/// Throws NoPositiveSequence in the InfeasiblePositive regime.
GmBounds product_bounds(const StatProfile& profile);

/// n-th roots of the product bounds; lower is 0 when the product lower
/// bound is clamped.
std::pair<double, double> geometric_mean_bounds(const StatProfile& profile);

enum class ExtremalKind {
    UpperAttaining,  // n-1 equal terms below the mean, one above
    LowerAttaining,  // n-1 equal terms above the mean, one below
};

/// A two-value sequence that attains one of the product bounds.
struct ExtremalSequence {
    double repeated_value;
    int repeated_count;  // n - 1
    double outlier_value;
    ExtremalKind kind;

    std::vector<double> expand() const {
        std::vector<double> out(static_cast<std::size_t>(repeated_count) + 1,
                                repeated_value);
        out.back() = outlier_value;
        return out;
    }
};

/// Throws InfimumNotAttained for LowerAttaining in the Conditional regime
/// (the infimum 0 is approached but not reached by positive sequences) and
/// NoPositiveSequence in the InfeasiblePositive regime.
ExtremalSequence extremal_sequence(const StatProfile& profile,
                                   ExtremalKind kind);

/// Upper bound sqrt(n-1)*sigma on the difference between the arithmetic
/// and geometric means of any positive sequence with this profile.
double am_gm_gap_bound(const StatProfile& profile);

}  // namespace gmenv
