#include "gmenv/finance.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <stdexcept>
#include <utility>

#include "gmenv/bounds.hpp"
#include "gmenv/errors.hpp"

namespace gmenv {

namespace {

std::string trimmed(const std::string& s) {
    std::size_t first = 0;
    std::size_t last = s.size();
    while (first < last &&
           std::isspace(static_cast<unsigned char>(s[first]))) {
        ++first;
    }
    while (last > first &&
           std::isspace(static_cast<unsigned char>(s[last - 1]))) {
        --last;
    }
    return s.substr(first, last - first);
}

bool parse_number(const std::string& token, double& out) {
    const std::string t = trimmed(token);
    if (t.empty()) return false;
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size() && std::isfinite(out);
}

void check_return(double r, std::int64_t position, bool from_file) {
    if (!std::isfinite(r) || r <= -1.0) {
        const std::string msg = "return at " +
                                std::string(from_file ? "line " : "position ") +
                                std::to_string(position) +
                                " leaves no positive wealth (r <= -1)";
        throw ImpossibleReturn(msg, from_file ? position : 0);
    }
}

WealthEnvelope envelope_of_profile(const StatProfile& profile) {
    const GmBounds bounds = product_bounds(profile);
    WealthEnvelope env;
    env.n = profile.n();
    env.growth_mean = profile.mu();
    env.growth_sigma = profile.sigma();
    env.regime = bounds.regime;
    env.lower_log = bounds.lower_log;
    env.upper_log = bounds.upper_log;
    env.lower_wealth = bounds.lower_product;
    env.upper_wealth = bounds.upper_product;
    return env;
}

}  // namespace

ReturnSeries make_return_series(std::vector<double> returns,
                                std::string period_label) {
    if (returns.size() < 2) {
        throw InvalidLength("need at least 2 returns, got " +
                            std::to_string(returns.size()));
    }
    for (std::size_t k = 0; k < returns.size(); ++k) {
        check_return(returns[k], static_cast<std::int64_t>(k) + 1, false);
    }
    return {std::move(returns), std::move(period_label)};
}

ReturnSeries ingest_csv(std::istream& source, std::string period_label) {
    std::vector<double> returns;
    std::string line;
    std::int64_t line_no = 0;
    bool two_column = false;
    bool saw_content = false;

    while (std::getline(source, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string content = trimmed(line);
        if (content.empty()) continue;

        if (!saw_content) {
            saw_content = true;
            double value;
            if (parse_number(content, value)) {
                check_return(value, line_no, true);
                returns.push_back(value);
                continue;
            }
            if (content.find(',') == std::string::npos) {
                throw ParseError("expected a number or a label,return header",
                                 line_no);
            }
            two_column = true;  // header line, not data
            continue;
        }

        if (!two_column) {
            double value;
            if (!parse_number(content, value)) {
                throw ParseError("expected a single numeric return", line_no);
            }
            check_return(value, line_no, true);
            returns.push_back(value);
            continue;
        }

        const std::size_t comma = content.find(',');
        if (comma == std::string::npos ||
            content.find(',', comma + 1) != std::string::npos) {
            throw ParseError("expected exactly two comma-separated fields",
                             line_no);
        }
        double value;
        if (!parse_number(content.substr(comma + 1), value)) {
            throw ParseError("second field is not a number", line_no);
        }
        check_return(value, line_no, true);
        returns.push_back(value);
    }

    if (returns.size() < 2) {
        throw InvalidLength("need at least 2 returns, got " +
                            std::to_string(returns.size()));
    }
    return {std::move(returns), std::move(period_label)};
}

WealthEnvelope wealth_envelope(const ReturnSeries& series) {
    std::vector<double> growth(series.returns.size());
    long double actual = 0.0L;
    for (std::size_t k = 0; k < growth.size(); ++k) {
        growth[k] = 1.0 + series.returns[k];
        actual += std::log(static_cast<long double>(growth[k]));
    }

    const SequenceStats stats = stats_of(growth);
    const StatProfile profile = StatProfile::from_stats(stats);
    if (classify(profile).tag == RegimeTag::InfeasiblePositive) {
        // Unreachable: an all-positive sequence with this profile exists,
        // namely the growth factors themselves.
        throw std::logic_error("realized growth factors in infeasible regime");
    }

    WealthEnvelope env = envelope_of_profile(profile);
    env.actual_log = static_cast<double>(actual);
    env.actual_wealth = std::exp(*env.actual_log);
    return env;
}

WealthEnvelope envelope_from_params(int n, double mean_return, double sigma) {
    const double growth_mean = 1.0 + mean_return;
    if (n < 2 || !(growth_mean > 0.0) || !(sigma >= 0.0) ||
        !std::isfinite(growth_mean) || !std::isfinite(sigma)) {
        throw NoPositiveSequence(
            "need n >= 2, mean return > -1 and sigma >= 0");
    }
    const StatProfile profile(n, growth_mean, sigma);
    if (classify(profile).tag == RegimeTag::InfeasiblePositive) {
        throw NoPositiveSequence(
            "sigma/(1 + mean return) >= sqrt(n-1): no positive growth "
            "sequence has this profile");
    }
    return envelope_of_profile(profile);
}

double robust_relative_upper_log(const RobustParams& params, std::int64_t n) {
    const double g0 = params.growth_mean;
    const double s0 = params.sigma0;
    const double eps = params.epsilon;
    if (!std::isfinite(g0) || !std::isfinite(s0) || !std::isfinite(eps) ||
        !(eps > 0.0) || !(g0 - eps > 0.0) || !(s0 - eps >= 0.0)) {
        throw InvalidRobustParams(
            "need epsilon > 0, growth_mean > epsilon and sigma0 >= epsilon");
    }
    if (n < 2) {
        throw InvalidLength("need n >= 2, got " + std::to_string(n));
    }
    const double root = std::sqrt(static_cast<double>(n) - 1.0);
    const double q = (s0 - eps) / ((g0 + eps) * root);
    if (q >= 1.0) {
        throw InvalidRobustParams(
            "(sigma0 - epsilon)/((growth_mean + epsilon)*sqrt(n-1)) >= 1: "
            "worst case has no positive sequence");
    }
    return std::log1p((s0 + eps) * root / (g0 - eps)) +
           (static_cast<double>(n) - 1.0) * std::log1p(-q);
}

double robust_relative_upper(const RobustParams& params, std::int64_t n) {
    return std::exp(robust_relative_upper_log(params, n));
}

}  // namespace gmenv
