#include "zeta_heat/expansion.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <ostream>

#include "zeta_heat/errors.hpp"

namespace zeta_heat::expansion {
namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

constexpr double kPi = std::numbers::pi;

BigInteger factorial(unsigned n) {
    BigInteger f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

Rational power_of_two(int e) {
    if (e >= 0) return Rational(BigInteger(1) << e);
    return Rational(BigInteger(1), BigInteger(1) << -e);
}

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

double ExactCoefficient::to_double() const {
    const double q = zeta_heat::to_double(value);
    return pi_power == 0 ? q : q / std::sqrt(kPi);
}

std::string ExactCoefficient::to_string() const {
    std::string s = numerator(value).str() + "/" + denominator(value).str();
    if (pi_power == -1) s += "*pi^-1/2";
    return s;
}

ExactCoefficient b_coeff(unsigned n) {
    if (n == 0) return {Rational(1, 4), 0};
    if (n % 2 == 1) {
        const int k = static_cast<int>(n + 1) / 2;
        const Rational bern = special_numbers::bernoulli(2 * k);
        const Rational factor = Rational(1) - power_of_two(1 - 2 * k);
        return {-factor * bern / Rational(2 * factorial(2 * k)), 0};
    }
    const int k = static_cast<int>(n) / 2;
    const Rational euler(special_numbers::euler_number(2 * k));
    return {power_of_two(-2 * k) * euler / Rational(4 * factorial(2 * k)), 0};
}

ExactCoefficient a_coeff(unsigned n) {
    if (n == 0) return {Rational(-1, 4), 0};
    if (n % 2 == 1) {
        const int k = static_cast<int>(n + 1) / 2;
        const Rational bern = special_numbers::bernoulli(2 * k);
        const Rational gamma_k(special_numbers::gamma_integer(k));
        const Rational value = gamma_k * (power_of_two(2 * k - 1) - 1) * bern / Rational(2 * factorial(2 * k));
        return {value, -1};
    }
    const int k = static_cast<int>(n) / 2;
    // Gamma(k + 1/2) / sqrt(pi) is rational, so even coefficients carry no pi.
    const Rational half_gamma = special_numbers::gamma_half_integer(k).coefficient;
    const Rational euler(special_numbers::euler_number(2 * k));
    return {-half_gamma * euler / Rational(4 * factorial(2 * k)), 0};
}

ExactCoefficient combined_coeff(unsigned n) {
    ExactCoefficient c = a_coeff(n);
    if (n % 2 == 0) {
        // 2 e^{t/4} = sum_m 2 (1/4)^m / m! t^m
        const unsigned m = n / 2;
        c.value += Rational(2) * power_of_two(-2 * static_cast<int>(m)) / Rational(factorial(m));
    }
    return c;
}

CoefficientTable::CoefficientTable(unsigned max_order) : max_order_(max_order) {
    a_.reserve(max_order + 1);
    b_.reserve(max_order + 1);
    for (unsigned n = 0; n <= max_order; ++n) {
        a_.push_back(a_coeff(n));
        b_.push_back(b_coeff(n));
        a_float_.push_back(a_.back().to_double());
        b_float_.push_back(b_.back().to_double());
    }
}

void CoefficientTable::write_csv(std::ostream& out) const {
    out << "n,a_exact,a_float,b_exact,b_float\n";
    for (unsigned n = 0; n <= max_order_; ++n) {
        out << n << ',' << a_[n].to_string() << ',' << format_g17(a_float_[n]) << ','
            << b_[n].to_string() << ',' << format_g17(b_float_[n]) << '\n';
    }
}

const CoefficientTable& default_table() {
    static const CoefficientTable table(kDefaultMaxOrder);
    return table;
}

double r_function(double u) {
    if (!(u > 0.0)) throw DomainError("r_function: requires u > 0");
    if (u < kRSeriesSwitch) {
        constexpr unsigned kTerms = 30;
        const CoefficientTable& table = default_table();
        double sum = 0.0;
        for (unsigned n = kTerms; n-- > 0;) sum = sum * u + table.b_value(n);
        return sum;
    }
    // e^{u/2} / (e^u - e^{-u}) = e^{-u/2} / (1 - e^{-2u})
    return std::exp(-0.5 * u) / -std::expm1(-2.0 * u) - 0.5 / u;
}

double divergent_terms(double t) {
    const double s = std::sqrt(kPi * t);
    return std::log(1.0 / t) / (4.0 * s) - (std::log(4.0 * kPi) + 0.5 * kEulerGamma) / (2.0 * s);
}

ExpansionValue evaluate_expansion(double t, unsigned order, const CoefficientTable& table) {
    if (!(t > 0.0)) throw DomainError("evaluate_expansion: requires t > 0");
    if (order > table.max_order()) throw DomainError("evaluate_expansion: order exceeds coefficient table");
    ExpansionValue v;
    v.t = t;
    v.order = order;
    v.divergent_part = divergent_terms(t);
    v.exponential_part = 2.0 * std::exp(0.25 * t);
    const double root_t = std::sqrt(t);
    double sum = 0.0;
    for (unsigned n = order + 1; n-- > 0;) sum = sum * root_t + table.a_value(n);
    v.series_part = sum;
    v.total = v.divergent_part + v.exponential_part + v.series_part;
    return v;
}

unsigned optimal_truncation(double t, const CoefficientTable& table) {
    if (!(t > 0.0)) throw DomainError("optimal_truncation: requires t > 0");
    const double half_log_t = 0.5 * std::log(t);
    unsigned best = 0;
    double best_log = std::log(std::abs(table.a_value(0)));
    for (unsigned n = 1; n <= table.max_order(); ++n) {
        const double mag = std::log(std::abs(table.a_value(n))) + n * half_log_t;
        if (mag < best_log) {
            best_log = mag;
            best = n;
        }
    }
    return best;
}

namespace {

std::complex<double> kernel_complex(std::complex<double> z) {
    if (std::abs(z) < 1e-2) {
        // R(z) = sum_{j>=1} 2 b_{j-1} z^j
        const CoefficientTable& table = default_table();
        std::complex<double> sum = 0.0;
        for (unsigned j = 9; j >= 1; --j) sum = (sum + 2.0 * table.b_value(j - 1)) * z;
        return sum;
    }
    return z * std::exp(0.5 * z) / std::sinh(z) - 1.0;
}

}  // namespace

double taylor_kernel(double u) {
    if (u == 0.0) return 0.0;
    return kernel_complex({u, 0.0}).real();
}

double taylor_kernel_derivative(unsigned n, double u) {
    if (n == 0) return taylor_kernel(u);
    // Nearest singularities of R are at +-i pi; a circle of radius 0.8 times
    // that distance makes the trapezoidal rule converge like 0.8^M.
    constexpr int kNodes = 256;
    const double radius = 0.8 * std::hypot(u, kPi);
    std::complex<double> acc = 0.0;
    for (int m = 0; m < kNodes; ++m) {
        const double theta = 2.0 * kPi * m / kNodes;
        const std::complex<double> w = std::polar(1.0, theta);
        acc += kernel_complex(u + radius * w) * std::pow(w, -static_cast<int>(n));
    }
    const double scale = std::tgamma(n + 1.0) / (kNodes * std::pow(radius, n));
    return (acc * scale).real();
}

double derivative_sup(unsigned n) {
    constexpr unsigned kMaxOrder = 40;
    if (n < 1 || n > kMaxOrder) throw DomainError("derivative_sup: order must lie in [1, 40]");
    static std::mutex mutex;
    static std::array<double, kMaxOrder + 1> memo{};
    {
        std::lock_guard lock(mutex);
        if (memo[n] > 0.0) return memo[n];
    }

    auto magnitude = [n](double u) { return std::abs(taylor_kernel_derivative(n, u)); };
    std::vector<double> grid;
    for (double u = 0.0; u < 20.0; u += 0.02) grid.push_back(u);
    for (double u = 20.0; u <= 200.0; u += 0.5) grid.push_back(u);

    std::size_t best = 0;
    double best_val = -1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = magnitude(grid[i]);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    // Golden-section maximization on the bracketing grid cells.
    double lo = grid[best == 0 ? 0 : best - 1];
    double hi = grid[std::min(best + 1, grid.size() - 1)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = magnitude(x1), f2 = magnitude(x2);
    for (int it = 0; it < 60 && hi - lo > 1e-10; ++it) {
        if (f1 > f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = magnitude(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = magnitude(x2);
        }
    }
    const double sup = std::max({best_val, f1, f2});
    std::lock_guard lock(mutex);
    memo[n] = sup;
    return sup;
}

double gaussian_moment(double t, unsigned n) {
    return std::pow(2.0, n) * std::pow(t, 0.5 * n) * std::tgamma(0.5 * (n + 1)) / std::sqrt(kPi);
}

double remainder_bound(double t, unsigned k) {
    if (!(t > 0.0)) throw DomainError("remainder_bound: requires t > 0");
    const double c = derivative_sup(k + 1);
    return c * std::tgamma(0.5 * (k + 1)) / (std::sqrt(kPi) * std::tgamma(k + 2.0)) *
           std::pow(2.0, static_cast<double>(k) - 1.0) * std::pow(t, 0.5 * k);
}

}  // namespace zeta_heat::expansion
