#include "zeta_heat/numerics/double_double.hpp"

#include <array>
#include <cctype>
#include <cstdlib>
#include <limits>

namespace zeta_heat::numerics {

DoubleDouble& DoubleDouble::operator+=(const DoubleDouble& b) noexcept {
    double e1 = 0.0, e2 = 0.0;
    double s = two_sum(hi_, b.hi_, e1);
    const double t = two_sum(lo_, b.lo_, e2);
    e1 += t;
    s = quick_two_sum(s, e1, e1);
    e1 += e2;
    hi_ = quick_two_sum(s, e1, lo_);
    return *this;
}

DoubleDouble& DoubleDouble::operator*=(const DoubleDouble& b) noexcept {
    double err = 0.0;
    const double p = two_prod(hi_, b.hi_, err);
    err += hi_ * b.lo_ + lo_ * b.hi_;
    hi_ = quick_two_sum(p, err, lo_);
    return *this;
}

DoubleDouble& DoubleDouble::operator/=(const DoubleDouble& b) noexcept {
    // Long division: three quotient digits.
    const double q1 = hi_ / b.hi_;
    DoubleDouble r = *this - b * DoubleDouble(q1);
    const double q2 = r.hi_ / b.hi_;
    r -= b * DoubleDouble(q2);
    const double q3 = r.hi_ / b.hi_;
    double lo = 0.0;
    const double hi = quick_two_sum(q1, q2, lo);
    *this = DoubleDouble(hi, lo) + DoubleDouble(q3);
    return *this;
}

DoubleDouble square(const DoubleDouble& a) noexcept {
    double err = 0.0;
    const double p = two_prod(a.hi(), a.hi(), err);
    err += 2.0 * a.hi() * a.lo();
    double lo = 0.0;
    const double hi = quick_two_sum(p, err, lo);
    return {hi, lo};
}

DoubleDouble ldexp(const DoubleDouble& a, int e) noexcept {
    return {std::ldexp(a.hi(), e), std::ldexp(a.lo(), e)};
}

DoubleDouble sqrt(const DoubleDouble& a) {
    if (a.hi() <= 0.0) return DoubleDouble(a.hi() == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN());
    // One Newton step on the double approximation doubles the precision.
    const double x = std::sqrt(a.hi());
    const DoubleDouble xx(x);
    return xx + (a - square(xx)) / DoubleDouble(2.0 * x);
}

DoubleDouble exp(const DoubleDouble& a) {
    constexpr double kMaxArg = 709.0;
    constexpr double kMinArg = -745.0;
    if (a.hi() > kMaxArg) return DoubleDouble(std::numeric_limits<double>::infinity());
    if (a.hi() < kMinArg) return DoubleDouble(0.0);
    if (a.hi() == 0.0) return DoubleDouble(1.0);

    // a = k ln2 + r, |r| <= ln2/2, then r is scaled by 2^-10 so the Taylor
    // series converges in a handful of terms; undo the scaling by squaring
    // expm1: e^{2x} - 1 = (e^x - 1)(e^x - 1 + 2).
    constexpr int kSquarings = 10;
    const double k = std::nearbyint(a.hi() / dd_constants::ln2.hi());
    const DoubleDouble r = ldexp(a - dd_constants::ln2 * DoubleDouble(k), -kSquarings);

    DoubleDouble sum = r;
    DoubleDouble term = r;
    for (int n = 2; n < 20; ++n) {
        term = term * r / DoubleDouble(static_cast<double>(n));
        sum += term;
        if (std::abs(term.hi()) < 1e-34 * std::abs(sum.hi())) break;
    }
    for (int i = 0; i < kSquarings; ++i) sum = sum * (sum + DoubleDouble(2.0));
    return ldexp(sum + DoubleDouble(1.0), static_cast<int>(k));
}

DoubleDouble log(const DoubleDouble& a) {
    if (a.hi() <= 0.0) return DoubleDouble(std::numeric_limits<double>::quiet_NaN());
    // Newton on exp(y) = a: y <- y + a e^{-y} - 1.
    DoubleDouble y(std::log(a.hi()));
    y = y + a * exp(-y) - DoubleDouble(1.0);
    return y;
}

namespace {

DoubleDouble pow10(int n) {
    DoubleDouble result(1.0);
    DoubleDouble base(10.0);
    for (int m = n; m > 0; m >>= 1) {
        if (m & 1) result *= base;
        base = square(base);
    }
    return result;
}

}  // namespace

std::optional<DoubleDouble> DoubleDouble::from_decimal(std::string_view text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';

    DoubleDouble mantissa(0.0);
    int digits = 0;
    int frac_digits = 0;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '.') {
            if (seen_point) return std::nullopt;
            seen_point = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) break;
        mantissa = mantissa * DoubleDouble(10.0) + DoubleDouble(static_cast<double>(c - '0'));
        ++digits;
        if (seen_point) ++frac_digits;
    }
    if (digits == 0) return std::nullopt;

    int exponent = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        const std::string tail(text.substr(i));
        if (tail.empty()) return std::nullopt;
        char* end = nullptr;
        const long e = std::strtol(tail.c_str(), &end, 10);
        if (end == tail.c_str() || *end != '\0' || e > 400 || e < -400) return std::nullopt;
        exponent = static_cast<int>(e);
        i = text.size();
    }
    if (i != text.size()) return std::nullopt;

    const int scale = exponent - frac_digits;
    DoubleDouble value = scale >= 0 ? mantissa * pow10(scale) : mantissa / pow10(-scale);
    return negative ? -value : value;
}

std::string to_string(const DoubleDouble& a, int digits) {
    if (!std::isfinite(a.hi())) return std::to_string(a.hi());
    if (a.hi() == 0.0) return "0";
    std::string out;
    DoubleDouble x = abs(a);
    if (a.hi() < 0) out.push_back('-');

    int e10 = static_cast<int>(std::floor(std::log10(x.hi())));
    x = e10 >= 0 ? x / pow10(e10) : x * pow10(-e10);
    if (x.hi() >= 10.0) { x /= DoubleDouble(10.0); ++e10; }
    if (x.hi() < 1.0) { x *= DoubleDouble(10.0); --e10; }

    std::string mant;
    for (int d = 0; d < digits; ++d) {
        int digit = static_cast<int>(std::floor(x.hi()));
        if (digit < 0) digit = 0;
        if (digit > 9) digit = 9;
        mant.push_back(static_cast<char>('0' + digit));
        x = (x - DoubleDouble(static_cast<double>(digit))) * DoubleDouble(10.0);
    }
    // Round half up on the next digit, propagating carries.
    if (x.hi() >= 5.0) {
        int j = digits - 1;
        while (j >= 0 && mant[j] == '9') mant[j--] = '0';
        if (j >= 0) {
            ++mant[j];
        } else {
            mant.insert(mant.begin(), '1');
            mant.pop_back();
            ++e10;
        }
    }
    out.push_back(mant[0]);
    if (digits > 1) {
        out.push_back('.');
        out.append(mant, 1, std::string::npos);
    }
    out += "e" + std::to_string(e10);
    return out;
}

}  // namespace zeta_heat::numerics
