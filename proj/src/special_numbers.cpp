#include "zeta_heat/special_numbers.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <vector>

#include "zeta_heat/errors.hpp"

namespace zeta_heat {

double to_double(const Rational& q) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    using boost::multiprecision::msb;
    const BigInteger num = numerator(q);
    const BigInteger den = denominator(q);
    if (num == 0) return 0.0;
    // Scale so the integer quotient carries 64+ significant bits, then round
    // once: avoids overflow for ratios of huge integers.
    const BigInteger abs_num = num < 0 ? BigInteger(-num) : num;
    const long shift = static_cast<long>(msb(den)) - static_cast<long>(msb(abs_num)) + 64;
    BigInteger scaled = shift >= 0 ? BigInteger(abs_num << shift) : BigInteger(abs_num >> -shift);
    const BigInteger quotient = scaled / den;
    const double mantissa = quotient.convert_to<double>();
    const double value = std::ldexp(mantissa, static_cast<int>(-shift));
    return num < 0 ? -value : value;
}

namespace special_numbers {
namespace {

BigInteger binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInteger c = 1;
    for (unsigned i = 1; i <= k; ++i) {
        c *= n - k + i;
        c /= i;
    }
    return c;
}

BigInteger factorial(unsigned n) {
    BigInteger f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

// All Bernoulli numbers B_0..B_kBernoulliMemoLimit, filled once. Odd entries
// past B_1 are zero.
const std::vector<Rational>& bernoulli_table() {
    static const std::vector<Rational> table = [] {
        std::vector<Rational> b(kBernoulliMemoLimit + 1);
        b[0] = 1;
        for (unsigned m = 1; m <= kBernoulliMemoLimit; ++m) {
            if (m > 1 && m % 2 == 1) {
                b[m] = 0;
                continue;
            }
            Rational acc = 0;
            for (unsigned j = 0; j < m; ++j) {
                if (b[j] != 0) acc += Rational(binomial(m + 1, j)) * b[j];
            }
            b[m] = -acc / Rational(m + 1);
        }
        return b;
    }();
    return table;
}

std::mutex euler_mutex;
std::vector<BigInteger> euler_memo;  // euler_memo[n] = E(2n), index 0 unused

BigInteger euler_from_double_sum(unsigned two_n) {
    // Multiply by 2^{2n}: (-1/2)^k -> (-1)^k 2^{2n-k}.
    BigInteger total = 0;
    for (unsigned k = 1; k <= two_n; ++k) {
        BigInteger inner = 0;
        for (unsigned j = 0; j <= 2 * k; ++j) {
            const long base = static_cast<long>(k) - static_cast<long>(j);
            BigInteger p = boost::multiprecision::pow(BigInteger(base), two_n);
            BigInteger c = binomial(2 * k, j) * p;
            if (j % 2) inner -= c; else inner += c;
        }
        BigInteger term = inner << (two_n - k);
        if (k % 2) total -= term; else total += term;
    }
    const BigInteger scale = BigInteger(1) << two_n;
    if (total % scale != 0) throw Error("euler_number: double sum not divisible by 2^{2n}");
    return total / scale;
}

}  // namespace

Rational bernoulli(int two_k) {
    if (two_k < 0 || two_k % 2 != 0) throw DomainError("bernoulli: index must be even and nonnegative");
    if (static_cast<unsigned>(two_k) <= kBernoulliMemoLimit) return bernoulli_table()[two_k];

    // Beyond the memo table: continue the same recurrence locally.
    std::vector<Rational> b(bernoulli_table());
    b.resize(two_k + 1);
    for (unsigned m = kBernoulliMemoLimit + 1; m <= static_cast<unsigned>(two_k); ++m) {
        if (m % 2 == 1) continue;
        Rational acc = 0;
        for (unsigned j = 0; j < m; ++j)
            if (b[j] != 0) acc += Rational(binomial(m + 1, j)) * b[j];
        b[m] = -acc / Rational(m + 1);
    }
    return b[two_k];
}

BigInteger euler_number(int two_n) {
    if (two_n <= 0 || two_n % 2 != 0)
        throw DomainError("euler_number: index must be even and >= 2 (the defining sum is empty at 0)");
    const auto n = static_cast<std::size_t>(two_n / 2);
    {
        std::lock_guard lock(euler_mutex);
        if (n < euler_memo.size() && euler_memo[n] != 0) return euler_memo[n];
    }
    BigInteger value = euler_from_double_sum(static_cast<unsigned>(two_n));
    std::lock_guard lock(euler_mutex);
    if (euler_memo.size() <= n) euler_memo.resize(n + 1);
    euler_memo[n] = value;
    return value;
}

double HalfIntegerGamma::to_double() const {
    const double q = zeta_heat::to_double(coefficient);
    return times_sqrt_pi ? q * std::sqrt(std::numbers::pi) : q;
}

HalfIntegerGamma gamma_half_integer(int k) {
    if (k < 0) throw DomainError("gamma_half_integer: k must be nonnegative");
    const auto uk = static_cast<unsigned>(k);
    const BigInteger num = factorial(2 * uk);
    const BigInteger den = (BigInteger(1) << (2 * uk)) * factorial(uk);
    return {Rational(num, den), true};
}

BigInteger gamma_integer(int k) {
    if (k < 1) throw DomainError("gamma_integer: k must be >= 1");
    return factorial(static_cast<unsigned>(k - 1));
}

std::complex<double> digamma(std::complex<double> z) {
    if (!(z.real() > 0.0)) {
        if (z.imag() == 0.0 && z.real() == std::floor(z.real()))
            throw DomainError("digamma: pole at nonpositive integer");
        throw DomainError("digamma: requires Re z > 0");
    }
    // B_{2k} / (2k) for k = 1..10.
    static constexpr std::array<double, 10> kCoeff = {
        1.0 / 12.0,       -1.0 / 120.0,          1.0 / 252.0,    -1.0 / 240.0,
        1.0 / 132.0,      -691.0 / 32760.0,      1.0 / 12.0,     -3617.0 / 8160.0,
        43867.0 / 14364.0, -174611.0 / 6600.0,
    };
    constexpr double kShiftTarget = 10.0;

    std::complex<double> shift_sum = 0.0;
    while (z.real() < kShiftTarget) {
        shift_sum += 1.0 / z;
        z += 1.0;
    }
    const std::complex<double> inv = 1.0 / z;
    const std::complex<double> inv2 = inv * inv;
    std::complex<double> series = 0.0;
    for (auto it = kCoeff.rbegin(); it != kCoeff.rend(); ++it) series = (series + *it) * inv2;
    return std::log(z) - 0.5 * inv - series - shift_sum;
}

double digamma(double x) {
    if (x <= 0.0 && x == std::floor(x)) throw DomainError("digamma: pole at nonpositive integer");
    return digamma(std::complex<double>(x, 0.0)).real();
}

double incomplete_gamma0(double a) {
    if (!(a > 0.0)) throw DomainError("incomplete_gamma0: requires a > 0");
    if (std::isinf(a)) return 0.0;
    constexpr double kEps = 1e-17;
    if (a < 1.0) {
        // E_1(a) = -gamma - log a - sum_{k>=1} (-a)^k / (k k!)
        double term = 1.0;
        double sum = 0.0;
        for (int k = 1; k < 100; ++k) {
            term *= -a / k;
            const double contrib = term / k;
            sum += contrib;
            if (std::abs(contrib) < kEps * std::abs(sum)) break;
        }
        return -kEulerGamma - std::log(a) - sum;
    }
    // Modified Lentz on E_1(a) = e^{-a} / (a + 1 - 1/(a + 3 - 4/(a + 5 - ...))).
    constexpr double kTiny = 1e-300;
    double b = a + 1.0;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return h * std::exp(-a);
}

}  // namespace special_numbers
}  // namespace zeta_heat
