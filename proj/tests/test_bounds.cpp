#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "gmenv/bounds.hpp"
#include "gmenv/errors.hpp"
#include "test_support.hpp"

using namespace gmenv;
using testsupport::close_abs;
using testsupport::close_rel;
using testsupport::log_product;

TEST_CASE("n=2 collapse: both bounds equal mu^2 - sigma^2") {
    const GmBounds b = product_bounds(StatProfile(2, 1.0, 0.1));
    CHECK(close_rel(b.lower_product, 0.99, 1e-12));
    CHECK(close_rel(b.upper_product, 0.99, 1e-12));
    CHECK(b.lower_attained);
    CHECK(b.regime.tag == RegimeTag::ForcedPositive);
}

TEST_CASE("sigma=0 gives the trivial equality mu^n") {
    const GmBounds b = product_bounds(StatProfile(3, 1.0, 0.0));
    CHECK(b.lower_product == 1.0);
    CHECK(b.upper_product == 1.0);
    CHECK(b.lower_attained);
    CHECK(b.regime.tag == RegimeTag::Degenerate);

    const auto [gl, gu] = geometric_mean_bounds(StatProfile(4, 2.0, 0.0));
    CHECK(gl == 2.0);
    CHECK(gu == 2.0);
}

TEST_CASE("reference profile n=3 mu=1 sigma=0.2") {
    const StatProfile p(3, 1.0, 0.2);
    const GmBounds b = product_bounds(p);
    CHECK(close_rel(b.upper_product, testsupport::frozen::kUpper3, 1e-14));
    CHECK(close_rel(b.lower_product, testsupport::frozen::kLower3, 1e-14));
    CHECK(close_rel(b.upper_log, std::log(testsupport::frozen::kUpper3),
                    1e-13));
    CHECK(close_rel(b.lower_log, std::log(testsupport::frozen::kLower3),
                    1e-13));
    CHECK(b.lower_attained);
}

TEST_CASE("conditional regime clamps the lower bound to zero") {
    const StatProfile p(3, 1.0, 0.8);
    const GmBounds b = product_bounds(p);
    CHECK(b.regime.tag == RegimeTag::Conditional);
    CHECK(b.lower_product == 0.0);
    CHECK(b.lower_log == -std::numeric_limits<double>::infinity());
    CHECK_FALSE(b.lower_attained);
    CHECK(b.upper_product > 0.0);

    const auto [gl, gu] = geometric_mean_bounds(p);
    CHECK(gl == 0.0);
    CHECK(gu == std::exp(b.upper_log / 3.0));

    SUBCASE("boundary ratio t = 1/sqrt(n-1) is already clamped") {
        const GmBounds edge = product_bounds(StatProfile(5, 1.0, 0.5));
        CHECK(edge.regime.tag == RegimeTag::Conditional);
        CHECK(edge.lower_product == 0.0);
        CHECK_FALSE(edge.lower_attained);
    }
}

TEST_CASE("infeasible profile is rejected") {
    CHECK_THROWS_AS(product_bounds(StatProfile(2, 1.0, 2.0)),
                    NoPositiveSequence);
    CHECK_THROWS_AS(geometric_mean_bounds(StatProfile(2, 1.0, 1.0)),
                    NoPositiveSequence);
    CHECK_THROWS_AS(
        extremal_sequence(StatProfile(3, 1.0, 2.0), ExtremalKind::UpperAttaining),
        NoPositiveSequence);
}

TEST_CASE("unclamped expressions keep their signs") {
    const StatProfile p(3, 1.0, 0.8);
    const SignedLog upper = upper_bound_expression(p);
    const SignedLog lower = lower_bound_expression(p);
    CHECK(upper.sign == 1);
    CHECK(lower.sign == -1);  // mu - sigma*sqrt(2) < 0
    CHECK(lower.value() < 0.0);
}

TEST_CASE("extremal sequences") {
    const StatProfile p(3, 1.0, 0.2);
    SUBCASE("upper-attaining shape") {
        const ExtremalSequence s =
            extremal_sequence(p, ExtremalKind::UpperAttaining);
        CHECK(s.repeated_count == 2);
        CHECK(close_rel(s.repeated_value, 1.0 - 0.2 / std::sqrt(2.0), 1e-15));
        CHECK(close_rel(s.outlier_value, 1.0 + 0.2 * std::sqrt(2.0), 1e-15));
    }
    SUBCASE("lower-attaining shape") {
        const ExtremalSequence s =
            extremal_sequence(p, ExtremalKind::LowerAttaining);
        CHECK(s.repeated_count == 2);
        CHECK(close_rel(s.repeated_value, 1.0 + 0.2 / std::sqrt(2.0), 1e-15));
        CHECK(close_rel(s.outlier_value, 1.0 - 0.2 * std::sqrt(2.0), 1e-15));
    }
    SUBCASE("degenerate profile expands to the constant sequence") {
        const ExtremalSequence s = extremal_sequence(
            StatProfile(5, 1.0, 0.0), ExtremalKind::LowerAttaining);
        for (double x : s.expand()) CHECK(x == 1.0);
    }
    SUBCASE("no lower-attaining sequence in the conditional regime") {
        CHECK_THROWS_AS(extremal_sequence(StatProfile(3, 1.0, 0.8),
                                          ExtremalKind::LowerAttaining),
                        InfimumNotAttained);
        CHECK_NOTHROW(extremal_sequence(StatProfile(3, 1.0, 0.8),
                                        ExtremalKind::UpperAttaining));
    }
}

TEST_CASE("extremal sequences round-trip and attain the bounds on a grid") {
    for (const auto& g : testsupport::forced_positive_grid()) {
        CAPTURE(g.n);
        CAPTURE(g.mu);
        CAPTURE(g.t_fraction);
        const StatProfile p(g.n, g.mu, g.sigma);
        const GmBounds b = product_bounds(p);
        for (ExtremalKind kind :
             {ExtremalKind::UpperAttaining, ExtremalKind::LowerAttaining}) {
            const std::vector<double> seq =
                extremal_sequence(p, kind).expand();
            REQUIRE(static_cast<int>(seq.size()) == g.n);
            const SequenceStats s = stats_of(seq);
            CHECK(close_rel(s.mean, g.mu, 1e-12));
            CHECK(close_rel(s.stddev, g.sigma, 1e-12));
            const double target = kind == ExtremalKind::UpperAttaining
                                      ? b.upper_log
                                      : b.lower_log;
            CHECK(close_abs(log_product(seq), target, 1e-10));
        }
    }
}

TEST_CASE("upper and lower bounds strictly decrease in sigma") {
    for (int n : {2, 3, 5, 10, 50}) {
        const double root = std::sqrt(static_cast<double>(n) - 1.0);
        double prev_upper = std::numeric_limits<double>::infinity();
        double prev_lower = std::numeric_limits<double>::infinity();
        for (int k = 1; k <= 40; ++k) {
            // sigma sweeps (0, mu/sqrt(n-1)): attained-lower territory.
            const double sigma = 0.999 * (k / 40.0) / root;
            const GmBounds b = product_bounds(StatProfile(n, 1.0, sigma));
            CHECK(b.upper_log < prev_upper);
            CHECK(b.lower_log < prev_lower);
            prev_upper = b.upper_log;
            prev_lower = b.lower_log;
        }
        // The upper bound keeps decreasing through the conditional range,
        // which is empty when n=2 (both thresholds coincide at sigma=mu).
        if (n == 2) continue;
        for (int k = 1; k < 40; ++k) {
            const double sigma = (1.0 + (root * root - 1.0) * k / 40.0) / root;
            const GmBounds b = product_bounds(StatProfile(n, 1.0, sigma));
            CHECK(b.upper_log < prev_upper);
            prev_upper = b.upper_log;
        }
    }
}

TEST_CASE("bounds stay ordered and positive in the forced regime") {
    for (const auto& g : testsupport::forced_positive_grid()) {
        const GmBounds b = product_bounds(StatProfile(g.n, g.mu, g.sigma));
        CHECK(b.lower_product > 0.0);
        CHECK(b.lower_product <= b.upper_product);
        CHECK(b.lower_attained);
        if (g.n == 2) {
            CHECK(close_rel(b.lower_product, b.upper_product, 1e-12));
        } else {
            CHECK(b.lower_log < b.upper_log);
        }
    }
}

TEST_CASE("large n stays finite in log space") {
    // mu = 7, n = 20000: the linear product overflows, the logs must not.
    const StatProfile p(20000, 7.0, 0.01);
    const GmBounds b = product_bounds(p);
    CHECK(std::isfinite(b.upper_log));
    CHECK(std::isfinite(b.lower_log));
    CHECK(b.upper_product == std::numeric_limits<double>::infinity());
    const double root = std::sqrt(19999.0);
    const double expected =
        std::log(7.0 + 0.01 * root) + 19999.0 * std::log(7.0 - 0.01 / root);
    CHECK(close_rel(b.upper_log, expected, 1e-12));

    // mu = 0.01: the linear product underflows to zero instead.
    const GmBounds tiny = product_bounds(StatProfile(20000, 0.01, 1e-5));
    CHECK(std::isfinite(tiny.upper_log));
    CHECK(tiny.upper_product == 0.0);
}

TEST_CASE("am_gm_gap_bound is sqrt(n-1) sigma") {
    CHECK(am_gm_gap_bound(StatProfile(2, 1.0, 0.3)) == doctest::Approx(0.3));
    CHECK(am_gm_gap_bound(StatProfile(10, 5.0, 1.0)) == doctest::Approx(3.0));
    CHECK(am_gm_gap_bound(StatProfile(5, 1.0, 0.25)) == doctest::Approx(0.5));
}
