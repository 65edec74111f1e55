#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gmenv/profile.hpp"

namespace gmenv {

/// Per-period investment returns; every return is > -1 so the growth
/// factors 1 + r are positive.
struct ReturnSeries {
    std::vector<double> returns;
    std::string period_label;
};

/// Validating constructor; index of an offending value is reported as its
/// 1-based position.
ReturnSeries make_return_series(std::vector<double> returns,
                                std::string period_label);

/// Reads returns from CSV text: either a single numeric column with no
/// header, or "label,return" rows under a header line. Decimal point only,
/// comma separator, surrounding whitespace ignored, blank lines skipped.
/// Note the statistics downstream use the population variance (divide by
/// n); there is no sample-variance mode.
ReturnSeries ingest_csv(std::istream& source,
                        std::string period_label = "period");

/// Possible terminal wealths of $1 compounded through n periods, given
/// only the count, mean and variance of the growth factors. All internal
/// arithmetic is in log space; linear values are derived on output.
struct WealthEnvelope {
    int n;
    double growth_mean;   // mean of the factors 1 + r
    double growth_sigma;  // std dev of the factors (= std dev of returns)
    Regime regime;        // regime of the growth-factor profile
    double lower_log;     // -inf when the lower bound is clamped to 0
    double upper_log;
    double lower_wealth;
    double upper_wealth;
    std::optional<double> actual_log;  // present when built from a series
    std::optional<double> actual_wealth;
};

/// Envelope for a realized series; the realized wealth always lies inside.
WealthEnvelope wealth_envelope(const ReturnSeries& series);

/// Envelope from period count, mean return and return std dev alone.
/// Throws NoPositiveSequence when 1 + mean_return <= 0, sigma < 0, or
/// sigma/(1 + mean_return) >= sqrt(n-1).
WealthEnvelope envelope_from_params(int n, double mean_return, double sigma);

/// Estimated growth-factor statistics with an uncertainty radius. Note
/// growth_mean is the mean of the factors 1 + r themselves (a value like
/// 1.0003 for daily equity data), not the mean return.
struct RobustParams {
    double growth_mean;  // estimated mean growth factor
    double sigma0;       // estimated std dev of the growth factors
    double epsilon;      // uncertainty radius on both estimates
};

/// Log of the worst-case ratio of terminal wealth to the risk-free outcome
/// with the same mean, over all series whose mean and std dev lie within
/// epsilon of the estimates:
///   log1p((sigma0+eps)*sqrt(n-1)/(g0-eps))
///     + (n-1)*log1p(-(sigma0-eps)/((g0+eps)*sqrt(n-1))).
/// Tends to -inf as n grows whenever sigma0 > epsilon.
double robust_relative_upper_log(const RobustParams& params, std::int64_t n);

/// exp of the above; underflows to 0 for very large n.
double robust_relative_upper(const RobustParams& params, std::int64_t n);

}  // namespace gmenv
