#include "gmenv/comparisons.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gmenv/bounds.hpp"
#include "gmenv/errors.hpp"

namespace gmenv {

namespace {

void require_positive(std::span<const double> values) {
    if (values.size() < 2) {
        throw InvalidLength("need at least 2 values, got " +
                            std::to_string(values.size()));
    }
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!std::isfinite(values[k]) || !(values[k] > 0.0)) {
            throw NonPositiveInput("value #" + std::to_string(k + 1) +
                                   " is not a positive finite number");
        }
    }
}

double log_mean(std::span<const double> values) {
    long double sum = 0.0L;
    for (double x : values) sum += std::log(x);
    return static_cast<double>(sum / static_cast<long double>(values.size()));
}

}  // namespace

BoundReport evaluate_bounds(std::span<const double> values) {
    require_positive(values);

    BoundReport report;
    report.stats = stats_of(values);
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    report.seq_min = *lo;
    report.seq_max = *hi;

    const double geometric = std::exp(log_mean(values));
    report.gap = std::max(0.0, report.stats.mean - geometric);

    const double sigma = report.stats.stddev;
    report.gap_bound_variance =
        std::sqrt(static_cast<double>(report.stats.n - 1)) * sigma;
    report.gap_bound_aldaz = static_cast<double>(report.stats.n) * sigma;
    report.cf_gap_lower = sigma * sigma / (2.0 * report.seq_max);
    report.cf_gap_upper = sigma * sigma / (2.0 * report.seq_min);

    // Ties go to the earlier label.
    report.tightest_upper = "cartwright_field";
    double best = report.cf_gap_upper;
    if (report.gap_bound_variance < best) {
        best = report.gap_bound_variance;
        report.tightest_upper = "variance";
    }
    if (report.gap_bound_aldaz < best) {
        report.tightest_upper = "aldaz";
    }
    return report;
}

ProductComparison product_bound_comparison(std::span<const double> values) {
    require_positive(values);

    const SequenceStats stats = stats_of(values);
    const double n = static_cast<double>(stats.n);

    long double log_product = 0.0L;
    for (double x : values) log_product += std::log(x);
    const double product_log = static_cast<double>(log_product);

    ProductComparison cmp;
    cmp.product = std::exp(product_log);

    const StatProfile profile = StatProfile::from_stats(stats);
    const GmBounds bounds = product_bounds(profile);
    cmp.variance_lower = bounds.lower_product;
    cmp.variance_upper = bounds.upper_product;

    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double var = stats.stddev * stats.stddev;
    const double cf_lower_base = stats.mean - var / (2.0 * *lo);
    const double cf_upper_base = stats.mean - var / (2.0 * *hi);
    const double cf_lower_log =
        cf_lower_base > 0.0 ? n * std::log(cf_lower_base)
                            : -std::numeric_limits<double>::infinity();
    const double cf_upper_log = n * std::log(cf_upper_base);
    cmp.cf_lower = cf_lower_base > 0.0 ? std::exp(cf_lower_log) : 0.0;
    cmp.cf_upper = std::exp(cf_upper_log);

    const double slack = 1e-12 * std::max(1.0, std::fabs(product_log));
    cmp.in_variance_interval = product_log >= bounds.lower_log - slack &&
                               product_log <= bounds.upper_log + slack;
    cmp.in_cf_interval = product_log >= cf_lower_log - slack &&
                         product_log <= cf_upper_log + slack;
    return cmp;
}

}  // namespace gmenv
