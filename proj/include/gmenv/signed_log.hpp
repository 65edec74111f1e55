#pragma once

#include <cmath>
#include <limits>

namespace gmenv {

/// A real number carried as sign and log of magnitude, so products with
/// many factors neither overflow nor lose their sign.
struct SignedLog {
    int sign = 0;  // -1, 0, +1
    double log_abs = -std::numeric_limits<double>::infinity();

    static SignedLog of(double x) {
        if (x > 0.0) return {1, std::log(x)};
        if (x < 0.0) return {-1, std::log(-x)};
        return {0, -std::numeric_limits<double>::infinity()};
    }

    /// Linear-space value; overflows to +-inf and underflows to 0.
    double value() const {
        if (sign == 0) return 0.0;
        return sign * std::exp(log_abs);
    }

    SignedLog& operator*=(const SignedLog& other) {
        sign *= other.sign;
        log_abs = (sign == 0) ? -std::numeric_limits<double>::infinity()
                              : log_abs + other.log_abs;
        return *this;
    }

    friend SignedLog operator*(SignedLog a, const SignedLog& b) {
        a *= b;
        return a;
    }

    /// Integer power, exponent >= 0.
    SignedLog pow(long long exponent) const {
        if (exponent == 0) return {1, 0.0};
        SignedLog r;
        r.sign = (exponent % 2 == 0) ? sign * sign : sign;
        r.log_abs = (r.sign == 0)
                        ? -std::numeric_limits<double>::infinity()
                        : log_abs * static_cast<double>(exponent);
        return r;
    }
};

}  // namespace gmenv
