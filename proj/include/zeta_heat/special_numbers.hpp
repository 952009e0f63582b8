#pragma once

#include <complex>

#include <boost/multiprecision/cpp_int.hpp>

namespace zeta_heat {

/// Exact signed integer of unbounded size.
using BigInteger = boost::multiprecision::cpp_int;
/// Exact rational, always in lowest terms with positive denominator.
using Rational = boost::multiprecision::cpp_rational;

/// Euler–Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286061;

double to_double(const Rational& q);

namespace special_numbers {

/// Largest Bernoulli index kept in the memo table.
inline constexpr unsigned kBernoulliMemoLimit = 200;

/// Exact B_n for even n >= 0 (B_0 = 1, B_2 = 1/6, ...), from the recurrence
/// sum_{j<=m} C(m+1, j) B_j = 0. Odd index throws DomainError.
Rational bernoulli(int two_k);

/// Exact Euler number E(2n) for 2n >= 2, evaluated from the alternating
/// double binomial sum
///     E(2n) = sum_{k=1}^{2n} (-1/2)^k sum_{j=0}^{2k} (-1)^j C(2k,j) (k-j)^{2n}
/// after clearing the powers of two. E(2) = -1, E(4) = 5, E(6) = -61.
/// Index 0 (an empty sum) and odd indices throw DomainError.
BigInteger euler_number(int two_n);

/// Gamma(k + 1/2) as coefficient * sqrt(pi).
struct HalfIntegerGamma {
    Rational coefficient;
    bool times_sqrt_pi = true;

    double to_double() const;
};

/// Exact Gamma(k + 1/2) = (2k)! / (4^k k!) * sqrt(pi).
HalfIntegerGamma gamma_half_integer(int k);

/// Exact Gamma(k) = (k-1)! for k >= 1.
BigInteger gamma_integer(int k);

/// Digamma on Re z > 0. Shifts upward to Re z >= 10 and sums the Bernoulli
/// asymptotic series; relative accuracy ~1e-15 on the critical strip.
std::complex<double> digamma(std::complex<double> z);
double digamma(double x);

/// Upper incomplete gamma Gamma(0, a) = E_1(a) for a > 0. Power series for
/// a < 1, Lentz continued fraction otherwise.
double incomplete_gamma0(double a);

}  // namespace special_numbers
}  // namespace zeta_heat
