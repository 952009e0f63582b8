#pragma once

#include <cmath>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace zeta_heat::numerics {

// Error-free transformations (Knuth two-sum, FMA-based two-product).
inline double two_sum(double a, double b, double& err) noexcept {
    const double s = a + b;
    const double bb = s - a;
    err = (a - (s - bb)) + (b - bb);
    return s;
}

inline double quick_two_sum(double a, double b, double& err) noexcept {
    const double s = a + b;
    err = b - (s - a);
    return s;
}

inline double two_prod(double a, double b, double& err) noexcept {
    const double p = a * b;
    err = std::fma(a, b, -p);
    return p;
}

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2, giving roughly 32
/// significant decimal digits.
class DoubleDouble {
public:
    constexpr DoubleDouble() noexcept = default;
    constexpr DoubleDouble(double x) noexcept : hi_(x) {}  // NOLINT(google-explicit-constructor)
    constexpr DoubleDouble(double hi, double lo) noexcept : hi_(hi), lo_(lo) {}

    constexpr double hi() const noexcept { return hi_; }
    constexpr double lo() const noexcept { return lo_; }
    constexpr double to_double() const noexcept { return hi_ + lo_; }
    explicit constexpr operator double() const noexcept { return hi_ + lo_; }

    DoubleDouble operator-() const noexcept { return {-hi_, -lo_}; }

    DoubleDouble& operator+=(const DoubleDouble& b) noexcept;
    DoubleDouble& operator-=(const DoubleDouble& b) noexcept { return *this += -b; }
    DoubleDouble& operator*=(const DoubleDouble& b) noexcept;
    DoubleDouble& operator/=(const DoubleDouble& b) noexcept;

    friend DoubleDouble operator+(DoubleDouble a, const DoubleDouble& b) noexcept { return a += b; }
    friend DoubleDouble operator-(DoubleDouble a, const DoubleDouble& b) noexcept { return a -= b; }
    friend DoubleDouble operator*(DoubleDouble a, const DoubleDouble& b) noexcept { return a *= b; }
    friend DoubleDouble operator/(DoubleDouble a, const DoubleDouble& b) noexcept { return a /= b; }

    friend bool operator==(const DoubleDouble& a, const DoubleDouble& b) noexcept {
        return a.hi_ == b.hi_ && a.lo_ == b.lo_;
    }
    friend std::partial_ordering operator<=>(const DoubleDouble& a, const DoubleDouble& b) noexcept {
        if (auto c = a.hi_ <=> b.hi_; c != 0) return c;
        return a.lo_ <=> b.lo_;
    }

    /// Parses a plain decimal literal ("-12.5", "1.25e-3"). Returns nullopt on
    /// any malformed input, including trailing garbage.
    static std::optional<DoubleDouble> from_decimal(std::string_view text);

private:
    double hi_ = 0.0;
    double lo_ = 0.0;
};

DoubleDouble sqrt(const DoubleDouble& a);
DoubleDouble exp(const DoubleDouble& a);
DoubleDouble log(const DoubleDouble& a);
DoubleDouble ldexp(const DoubleDouble& a, int e) noexcept;
inline DoubleDouble abs(const DoubleDouble& a) noexcept { return a.hi() < 0 ? -a : a; }
DoubleDouble square(const DoubleDouble& a) noexcept;

/// Decimal rendering with `digits` significant digits (scientific notation).
std::string to_string(const DoubleDouble& a, int digits = 32);

namespace dd_constants {
inline constexpr DoubleDouble pi{3.141592653589793, 1.2246467991473532e-16};
inline constexpr DoubleDouble ln2{0.6931471805599453, 2.3190468138462996e-17};
inline constexpr DoubleDouble euler_gamma{0.5772156649015329, -4.942915152430645e-18};
inline constexpr DoubleDouble log_4pi{2.5310242469692907, 5.664688743963382e-17};
inline constexpr DoubleDouble sqrt_pi{1.772453850905516, -7.666586499825799e-17};
}  // namespace dd_constants

}  // namespace zeta_heat::numerics
