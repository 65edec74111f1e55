#include "gmenv/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "gmenv/bounds.hpp"
#include "gmenv/errors.hpp"
#include "gmenv/ladder.hpp"

namespace gmenv {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kContainmentSlack = 1e-9;  // log space

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t per_index_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) + index);
}

struct Accumulator {
    std::uint64_t positive = 0;
    std::uint64_t violations = 0;
    std::uint64_t nonpositive = 0;
    double min_log = kInf;
    double max_log = -kInf;

    void merge(const Accumulator& other) {
        positive += other.positive;
        violations += other.violations;
        nonpositive += other.nonpositive;
        min_log = std::min(min_log, other.min_log);
        max_log = std::max(max_log, other.max_log);
    }
};

}  // namespace

ShellGeometry shell_geometry(const StatProfile& profile) {
    const double n = static_cast<double>(profile.n());
    return {profile.n(),
            profile.mu(),
            profile.sigma(),
            profile.sigma() * std::sqrt(n),
            profile.mu() * std::sqrt(n / (n - 1.0)),
            profile.mu() * std::sqrt(n * (n - 1.0))};
}

ShellSampler::ShellSampler(const StatProfile& profile, std::uint64_t seed)
    : n_(profile.n()), mu_(profile.mu()),
      radius_(profile.sigma() * std::sqrt(static_cast<double>(profile.n()))),
      seed_(seed) {}

void ShellSampler::sample(std::uint64_t index, std::span<double> out) const {
    std::mt19937_64 engine(per_index_seed(seed_, index));
    std::normal_distribution<double> normal;
    const std::size_t n = static_cast<std::size_t>(n_);
    for (;;) {
        long double sum = 0.0L;
        for (std::size_t k = 0; k < n; ++k) {
            out[k] = normal(engine);
            sum += out[k];
        }
        const double mean = static_cast<double>(sum / static_cast<long double>(n));
        long double sq = 0.0L;
        for (std::size_t k = 0; k < n; ++k) {
            out[k] -= mean;
            sq += static_cast<long double>(out[k]) * out[k];
        }
        const double norm = std::sqrt(static_cast<double>(sq));
        if (norm == 0.0) continue;  // measure-zero direction, redraw
        const double scale = radius_ / norm;
        // Scaling magnifies the centering residue when the raw direction is
        // nearly constant, so center once more before shifting to the mean.
        long double drift = 0.0L;
        for (std::size_t k = 0; k < n; ++k) {
            out[k] *= scale;
            drift += out[k];
        }
        const double adjust = static_cast<double>(drift / static_cast<long double>(n));
        for (std::size_t k = 0; k < n; ++k) out[k] = mu_ + (out[k] - adjust);
        return;
    }
}

std::vector<std::vector<double>> sample_on_shell(const StatProfile& profile,
                                                 std::uint64_t count,
                                                 std::uint64_t seed) {
    ShellSampler sampler(profile, seed);
    std::vector<std::vector<double>> rows(count);
    for (std::uint64_t k = 0; k < count; ++k) {
        rows[k].resize(static_cast<std::size_t>(profile.n()));
        sampler.sample(k, rows[k]);
    }
    return rows;
}

SampleReport brute_force_extrema(const StatProfile& profile,
                                 std::uint64_t count, std::uint64_t seed,
                                 unsigned threads) {
    const Regime regime = classify(profile);
    double lower_log = -kInf;
    double upper_log = kInf;
    bool have_bounds = false;
    if (regime.tag != RegimeTag::InfeasiblePositive) {
        const GmBounds b = product_bounds(profile);
        lower_log = b.lower_log;
        upper_log = b.upper_log;
        have_bounds = true;
    }

    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    const std::uint64_t per_thread = 1 + (count - 1) / threads;

    ShellSampler sampler(profile, seed);
    const std::size_t n = static_cast<std::size_t>(profile.n());

    auto run_range = [&](std::uint64_t lo, std::uint64_t hi,
                         Accumulator& acc) {
        std::vector<double> buf(n);
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            sampler.sample(idx, buf);
            bool positive = true;
            for (double x : buf) {
                if (!(x > 0.0)) {  // exact test: no epsilon near the faces
                    positive = false;
                    break;
                }
            }
            if (!positive) {
                ++acc.nonpositive;
                continue;
            }
            ++acc.positive;
            long double sum = 0.0L;
            for (double x : buf) sum += std::log(x);
            const double lp = static_cast<double>(sum);
            acc.min_log = std::min(acc.min_log, lp);
            acc.max_log = std::max(acc.max_log, lp);
            if (have_bounds) {
                if (lp < lower_log - kContainmentSlack ||
                    lp > upper_log + kContainmentSlack) {
                    ++acc.violations;
                }
            } else {
                // A positive sample in the infeasible regime contradicts
                // the positivity bound itself.
                ++acc.violations;
            }
        }
    };

    Accumulator total;
    if (threads <= 1 || count < 2 * per_thread) {
        run_range(0, count, total);
    } else {
        std::vector<Accumulator> parts(threads);
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            const std::uint64_t lo = std::min<std::uint64_t>(count, t * per_thread);
            const std::uint64_t hi =
                std::min<std::uint64_t>(count, lo + per_thread);
            pool.emplace_back(run_range, lo, hi, std::ref(parts[t]));
        }
        for (auto& th : pool) th.join();
        for (const auto& part : parts) total.merge(part);
    }

    if (regime.tag == RegimeTag::ForcedPositive && total.nonpositive > 0) {
        throw std::logic_error(
            "non-positive sample in the forced-positive regime");
    }

    SampleReport report;
    report.requested = count;
    report.all_positive_count = total.positive;
    report.containment_violations = total.violations;
    report.seed = seed;
    report.min_product_log = total.positive ? total.min_log : kNaN;
    report.max_product_log = total.positive ? total.max_log : kNaN;
    return report;
}

std::vector<ScanEntry> two_value_scan(const StatProfile& profile) {
    if (profile.sigma() == 0.0) {
        throw DegenerateLadder(
            "sigma = 0 has the single critical point (mu,...,mu)");
    }
    const int n = profile.n();
    std::vector<ScanEntry> out;
    out.reserve(static_cast<std::size_t>(n) - 1);
    for (int i = 1; i <= n - 1; ++i) {
        const CriticalPoint cp = critical_point(i, profile);
        double product = 1.0;
        for (int k = 0; k < cp.type_index; ++k) product *= cp.high_value;
        for (int k = 0; k < cp.complement; ++k) product *= cp.low_value;
        out.push_back({i, product, cp.low_value > 0.0});
    }
    return out;
}

std::vector<double> sample_positive_simplex(int n, double mu,
                                            std::uint64_t seed) {
    if (n < 2) {
        throw InvalidLength("need n >= 2, got " + std::to_string(n));
    }
    if (!(mu > 0.0)) {
        throw InvalidProfile("mu must be > 0, got " + std::to_string(mu));
    }
    std::mt19937_64 engine(splitmix64(seed));
    std::exponential_distribution<double> expo;
    std::vector<double> out(static_cast<std::size_t>(n));
    for (;;) {
        long double sum = 0.0L;
        bool ok = true;
        for (auto& x : out) {
            x = expo(engine);
            ok = ok && x > 0.0;
            sum += x;
        }
        if (!ok) continue;
        const double scale =
            static_cast<double>(n) * mu / static_cast<double>(sum);
        for (auto& x : out) x *= scale;
        return out;
    }
}

}  // namespace gmenv
