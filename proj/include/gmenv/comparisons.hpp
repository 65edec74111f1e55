#pragma once

#include <span>

#include "gmenv/profile.hpp"

namespace gmenv {

/// How the known upper bounds on the mean gap R_A - R_G compare on one
/// concrete positive sequence. The variance-only bounds need nothing but
/// the profile; the Cartwright-Field pair also uses the sequence min and
/// max, so neither side dominates in general.
struct BoundReport {
    SequenceStats stats;
    double seq_min;
    double seq_max;
    double gap;                 // R_A - R_G, nonnegative
    double gap_bound_variance;  // sqrt(n-1) * sigma
    double gap_bound_aldaz;     // n * sigma
    double cf_gap_lower;        // sigma^2 / (2 * seq_max)
    double cf_gap_upper;        // sigma^2 / (2 * seq_min)
    const char* tightest_upper;  // "cartwright_field", "variance" or "aldaz"
};

/// Throws NonPositiveInput unless every value is finite and > 0,
/// InvalidLength for fewer than 2 values.
BoundReport evaluate_bounds(std::span<const double> values);

/// The actual product against the two product intervals: the
/// variance-only one from the profile, and the Cartwright-Field one
/// (mu - sigma^2/(2*min))^n .. (mu - sigma^2/(2*max))^n.
struct ProductComparison {
    double product;
    double variance_lower;
    double variance_upper;
    double cf_lower;  // clamped to 0 when mu - sigma^2/(2*min) < 0
    double cf_upper;
    bool in_variance_interval;
    bool in_cf_interval;
};

ProductComparison product_bound_comparison(std::span<const double> values);

}  // namespace gmenv
