#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gmenv/profile.hpp"

namespace gmenv {

/// The locus of all sequences with a given profile: the sphere of radius
/// sigma*sqrt(n) around the centroid (mu,...,mu), inside the hyperplane of
/// coordinate sum n*mu.
struct ShellGeometry {
    int n;
    double mu;
    double sigma;
    double shell_radius;  // sigma * sqrt(n)
    double inner_radius;  // centroid to the nearest boundary of the
                          // nonnegative slice: mu * sqrt(n/(n-1))
    double outer_radius;  // centroid to a vertex of that slice:
                          // mu * sqrt(n*(n-1))
};

ShellGeometry shell_geometry(const StatProfile& profile);

/// Draws sequences whose mean and standard deviation match the profile
/// exactly (to rounding): an isotropic direction in the sum-zero subspace,
/// scaled to the shell radius, shifted by mu. Sample #k depends only on
/// (seed, k), so any partition of the index range yields the same set.
class ShellSampler {
public:
    ShellSampler(const StatProfile& profile, std::uint64_t seed);

    int dimension() const noexcept { return n_; }

    /// Writes sample #index into out (size n).
    void sample(std::uint64_t index, std::span<double> out) const;

private:
    int n_;
    double mu_;
    double radius_;
    std::uint64_t seed_;
};

/// Convenience: materializes count samples as rows.
std::vector<std::vector<double>> sample_on_shell(const StatProfile& profile,
                                                 std::uint64_t count,
                                                 std::uint64_t seed);

struct SampleReport {
    std::uint64_t requested = 0;
    std::uint64_t all_positive_count = 0;
    /// Log-product extrema over the all-positive samples; NaN when none.
    double min_product_log = 0.0;
    double max_product_log = 0.0;
    /// All-positive samples whose log-product falls outside
    /// [lower_log - 1e-9, upper_log + 1e-9].
    std::uint64_t containment_violations = 0;
    std::uint64_t seed = 0;
};

/// Empirical product extrema over shell samples, checked against
/// product_bounds. In the ForcedPositive regime a non-positive sample is a
/// broken internal invariant and throws std::logic_error. threads = 0
/// picks the hardware concurrency; results are identical for any thread
/// count.
SampleReport brute_force_extrema(const StatProfile& profile,
                                 std::uint64_t count, std::uint64_t seed,
                                 unsigned threads = 0);

struct ScanEntry {
    int type_index;
    double product;  // direct multiplication over the expanded sequence
    bool positive;
};

/// Products of all n-1 two-value critical sequences by direct
/// multiplication, with positivity flags. Throws DegenerateLadder when
/// sigma == 0.
std::vector<ScanEntry> two_value_scan(const StatProfile& profile);

/// One draw, uniform over the positive part of the constant-sum slice
/// {x_i > 0, sum = n*mu}.
std::vector<double> sample_positive_simplex(int n, double mu,
                                            std::uint64_t seed);

}  // namespace gmenv
