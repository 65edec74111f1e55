#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "gmenv/bounds.hpp"
#include "gmenv/errors.hpp"
#include "gmenv/ladder.hpp"
#include "gmenv/oracle.hpp"
#include "test_support.hpp"

using namespace gmenv;
using testsupport::close_abs;
using testsupport::close_rel;
using testsupport::log_product;

TEST_CASE("shell geometry radii") {
    const ShellGeometry g = shell_geometry(StatProfile(3, 2.0, 0.5));
    CHECK(close_rel(g.shell_radius, 0.5 * std::sqrt(3.0), 1e-15));
    CHECK(close_rel(g.inner_radius, 2.0 * std::sqrt(1.5), 1e-15));
    CHECK(close_rel(g.outer_radius, 2.0 * std::sqrt(6.0), 1e-15));
    CHECK(g.inner_radius < g.outer_radius);

    SUBCASE("the two radii coincide exactly at n=2") {
        const ShellGeometry g2 = shell_geometry(StatProfile(2, 1.3, 0.5));
        CHECK(close_rel(g2.inner_radius, g2.outer_radius, 1e-15));
    }
}

TEST_CASE("shell samples match the profile exactly") {
    for (int n : {2, 3, 7, 50}) {
        const StatProfile p(n, 1.7, 0.31);
        for (const auto& row : sample_on_shell(p, 200, 99)) {
            REQUIRE(static_cast<int>(row.size()) == n);
            const SequenceStats s = stats_of(row);
            CHECK(close_rel(s.mean, 1.7, 1e-13));
            CHECK(close_rel(s.stddev, 0.31, 1e-13));
        }
    }
}

TEST_CASE("n=2 samples are permutations of (mu-sigma, mu+sigma)") {
    const StatProfile p(2, 1.0, 0.3);
    bool saw_up_first = false;
    bool saw_down_first = false;
    for (const auto& row : sample_on_shell(p, 100, 3)) {
        std::vector<double> sorted = row;
        std::sort(sorted.begin(), sorted.end());
        CHECK(close_rel(sorted[0], 0.7, 1e-13));
        CHECK(close_rel(sorted[1], 1.3, 1e-13));
        (row[0] > row[1] ? saw_up_first : saw_down_first) = true;
    }
    CHECK(saw_up_first);
    CHECK(saw_down_first);
}

TEST_CASE("sampling is deterministic in the seed and index") {
    const StatProfile p(5, 1.0, 0.2);
    const auto a = sample_on_shell(p, 50, 7);
    const auto b = sample_on_shell(p, 50, 7);
    CHECK(a == b);
    const auto c = sample_on_shell(p, 50, 8);
    CHECK(a != c);

    SUBCASE("reports are independent of the thread count") {
        const SampleReport r1 = brute_force_extrema(p, 30000, 11, 1);
        const SampleReport r3 = brute_force_extrema(p, 30000, 11, 3);
        const SampleReport r8 = brute_force_extrema(p, 30000, 11, 8);
        CHECK(r1.min_product_log == r3.min_product_log);
        CHECK(r1.max_product_log == r3.max_product_log);
        CHECK(r1.all_positive_count == r3.all_positive_count);
        CHECK(r1.containment_violations == r3.containment_violations);
        CHECK(r1.min_product_log == r8.min_product_log);
        CHECK(r1.max_product_log == r8.max_product_log);
        CHECK(r1.all_positive_count == r8.all_positive_count);
    }
}

TEST_CASE("brute force respects the bounds") {
    SUBCASE("reference profile") {
        const StatProfile p(3, 1.0, 0.2);
        const SampleReport r = brute_force_extrema(p, 100000, 42);
        const GmBounds b = product_bounds(p);
        CHECK(r.requested == 100000);
        CHECK(r.seed == 42);
        CHECK(r.containment_violations == 0);
        CHECK(r.max_product_log <= b.upper_log + 1e-9);
        CHECK(r.min_product_log >= b.lower_log - 1e-9);
    }
    SUBCASE("forced-positive regime has no sign escapes") {
        const StatProfile p(5, 1.0, 0.4);
        const SampleReport r = brute_force_extrema(p, 100000, 1);
        CHECK(r.all_positive_count == 100000);
        CHECK(r.containment_violations == 0);
    }
    SUBCASE("conditional regime sees non-positive samples") {
        const StatProfile p(3, 1.0, 1.0);
        const SampleReport r = brute_force_extrema(p, 100000, 5);
        CHECK(r.all_positive_count < r.requested);
        CHECK(r.all_positive_count > 0);
        CHECK(r.containment_violations == 0);
        // The infimum over positive sequences is 0, so the sampled minimum
        // sits far below the upper bound's scale.
        const GmBounds b = product_bounds(p);
        CHECK(r.min_product_log < b.upper_log - 1.0);
    }
}

TEST_CASE("infeasible profiles report empty extrema instead of failing") {
    const StatProfile p(2, 1.0, 1.5);
    const SampleReport r = brute_force_extrema(p, 5000, 9);
    CHECK(r.all_positive_count == 0);
    CHECK(std::isnan(r.min_product_log));
    CHECK(std::isnan(r.max_product_log));
    CHECK(r.containment_violations == 0);
}

TEST_CASE("empirical maxima hug the upper bound for small n") {
    for (int n : {2, 3, 4, 5}) {
        const StatProfile p(n, 1.0, 0.3);
        const GmBounds b = product_bounds(p);
        const SampleReport r = brute_force_extrema(p, 100000, 17);
        CAPTURE(n);
        CHECK(b.upper_log - r.max_product_log >= -1e-13);
        CHECK(b.upper_log - r.max_product_log < 1e-3);
    }
}

TEST_CASE("positive-orthant samples always satisfy the feasibility bound") {
    // Any concrete positive sequence must classify inside the feasible
    // regimes: ratio strictly below sqrt(n-1).
    std::uint64_t seed = 1000;
    for (int n : {2, 3, 5, 12}) {
        for (int rep = 0; rep < 200; ++rep) {
            const std::vector<double> v =
                sample_positive_simplex(n, 2.5, seed++);
            REQUIRE(static_cast<int>(v.size()) == n);
            for (double x : v) CHECK(x > 0.0);
            const SequenceStats s = stats_of(v);
            CHECK(close_rel(s.mean, 2.5, 1e-13));
            CHECK(s.stddev / s.mean <
                  std::sqrt(static_cast<double>(n) - 1.0));
        }
    }
}

TEST_CASE("two-value scan") {
    SUBCASE("matches the closed-form critical values") {
        for (const StatProfile& p :
             {StatProfile(3, 1.0, 0.2), StatProfile(5, 1.0, 0.4),
              StatProfile(6, 2.0, 1.1), StatProfile(3, 1.0, 1.0)}) {
            const auto entries = two_value_scan(p);
            REQUIRE(static_cast<int>(entries.size()) == p.n() - 1);
            for (const auto& e : entries) {
                CHECK(close_rel(e.product,
                                critical_value(e.type_index, p), 1e-12));
            }
        }
    }
    SUBCASE("type-1 value is maximal among positive critical points") {
        for (const StatProfile& p :
             {StatProfile(3, 1.0, 0.2), StatProfile(5, 1.0, 0.9),
              StatProfile(8, 1.0, 1.4)}) {
            const auto entries = two_value_scan(p);
            REQUIRE(entries[0].positive);
            for (const auto& e : entries) {
                if (e.positive && e.type_index != 1) {
                    CHECK(e.product < entries[0].product);
                }
            }
        }
    }
    SUBCASE("positivity flags follow the low value's sign") {
        const auto entries = two_value_scan(StatProfile(3, 1.0, 1.0));
        REQUIRE(entries.size() == 2);
        CHECK(entries[0].positive);        // b = 1 - 1/sqrt(2) > 0
        CHECK_FALSE(entries[1].positive);  // b = 1 - sqrt(2) < 0
        CHECK(entries[1].product < 0.0);
    }
    SUBCASE("n=2 has the single split") {
        const auto entries = two_value_scan(StatProfile(2, 1.0, 0.1));
        REQUIRE(entries.size() == 1);
        CHECK(close_rel(entries[0].product, 0.99, 1e-14));
    }
    SUBCASE("rejects sigma = 0") {
        CHECK_THROWS_AS(two_value_scan(StatProfile(3, 1.0, 0.0)),
                        DegenerateLadder);
    }
}

TEST_CASE("brute-force maximum approaches the closed-form upper bound") {
    const StatProfile p(3, 1.0, 0.2);
    const SampleReport r = brute_force_extrema(p, 100000, 42);
    CHECK(close_rel(std::exp(r.max_product_log),
                    testsupport::frozen::kUpper3, 1e-6));
    CHECK(close_rel(std::exp(r.min_product_log),
                    testsupport::frozen::kLower3, 1e-6));
}
