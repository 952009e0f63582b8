#include <doctest.h>

#include <sstream>

#include "zeta_heat/errors.hpp"
#include "zeta_heat/expansion.hpp"
#include "zeta_heat/explicit_formula.hpp"
#include "zeta_heat/heat_trace.hpp"
#include "zeta_heat/special_numbers.hpp"
#include "zeta_heat/zeros.hpp"

using namespace zeta_heat;
using namespace zeta_heat::expansion;

namespace {

// Taylor coefficients of r(u) = e^{u/2}/(e^u - e^{-u}) - 1/(2u) by exact power
// series division: e^u - e^{-u} = u S(u), and r = (e^{u/2}/S - 1/2)/u.
std::vector<Rational> r_series_oracle(unsigned n_max) {
    const unsigned len = n_max + 2;
    std::vector<Rational> num(len), den(len), q(len);
    Rational fact = 1;
    for (unsigned k = 0; k < len; ++k) {
        if (k) fact *= k;
        num[k] = 1 / (fact * Rational(boost::multiprecision::pow(BigInteger(2), k)));
        // S(u) = 2 sum u^{2j} / (2j+1)!, so den[k] = 2/(k+1)! for even k.
        den[k] = k % 2 ? Rational(0) : 2 / (fact * (k + 1));
    }
    for (unsigned k = 0; k < len; ++k) {
        Rational acc = num[k];
        for (unsigned j = 1; j <= k; ++j) acc -= den[j] * q[k - j];
        q[k] = acc / den[0];
    }
    std::vector<Rational> b(n_max + 1);
    for (unsigned n = 0; n <= n_max; ++n) b[n] = q[n + 1];
    return b;
}

double closed_form_r(double u) { return std::exp(0.5 * u) / (std::exp(u) - std::exp(-u)) - 0.5 / u; }

// R(u) = u e^{u/2} / sinh u - 1, with the removable point at 0 handled by a
// short series.
long double big_R(long double u) {
    if (std::abs(u) < 1e-4L) return u / 2 + u * u / 4 - u * u * u / 24;
    return u * std::exp(u / 2) / std::sinh(u) - 1;
}

double third_derivative_fd(double u) {
    const long double h = 1e-2L;
    auto f = [u, h](int k) { return big_R(u + k * h); };
    const long double d = -f(3) + 8 * f(2) - 13 * f(1) + 13 * f(-1) - 8 * f(-2) + f(-3);
    return static_cast<double>(d / (8 * h * h * h));
}

}  // namespace

TEST_CASE("closed-form coefficients") {
    CHECK(b_coeff(0) == ExactCoefficient{Rational(1, 4), 0});
    CHECK(b_coeff(1) == ExactCoefficient{Rational(-1, 48), 0});
    CHECK(b_coeff(2) == ExactCoefficient{Rational(-1, 32), 0});
    CHECK(a_coeff(0) == ExactCoefficient{Rational(-1, 4), 0});
    CHECK(a_coeff(1) == ExactCoefficient{Rational(1, 24), -1});
    CHECK(a_coeff(2) == ExactCoefficient{Rational(1, 16), 0});
    CHECK(a_coeff(3) == ExactCoefficient{Rational(-7, 1440), -1});
    CHECK(a_coeff(1).to_string() == "1/24*pi^-1/2");
    CHECK(a_coeff(2).to_string() == "1/16");
    CHECK(combined_coeff(0) == ExactCoefficient{Rational(7, 4), 0});
    CHECK(combined_coeff(2) == ExactCoefficient{Rational(9, 16), 0});
}

TEST_CASE("b_n are the Taylor coefficients of r") {
    const auto oracle = r_series_oracle(60);
    for (unsigned n = 0; n <= 60; ++n) {
        CHECK(b_coeff(n).value == oracle[n]);
        CHECK(b_coeff(n).pi_power == 0);
    }
}

TEST_CASE("a_n relation holds exactly") {
    for (unsigned n = 0; n <= 60; ++n) {
        const ExactCoefficient a = a_coeff(n);
        const Rational b = b_coeff(n).value;
        const BigInteger two_n = boost::multiprecision::pow(BigInteger(2), n);
        if (n % 2 == 1) {
            // Gamma((n+1)/2) is an integer; the sqrt(pi) stays in the denominator.
            CHECK(a.pi_power == -1);
            CHECK(a.value == -Rational(two_n * special_numbers::gamma_integer(static_cast<int>((n + 1) / 2))) * b);
        } else {
            // Gamma(n/2 + 1/2) = q sqrt(pi) cancels the 1/sqrt(pi).
            CHECK(a.pi_power == 0);
            CHECK(a.value == -Rational(two_n) * special_numbers::gamma_half_integer(static_cast<int>(n / 2)).coefficient * b);
        }
    }
    const auto& table = default_table();
    for (unsigned n = 0; n <= table.max_order(); ++n) {
        const double rel = -std::pow(2.0, n) * std::tgamma(0.5 * (n + 1)) / std::sqrt(M_PI) * table.b_value(n);
        CHECK(table.a_value(n) == doctest::Approx(rel).epsilon(1e-14));
    }
}

TEST_CASE("coefficient CSV") {
    std::ostringstream out;
    CoefficientTable(3).write_csv(out);
    CHECK(out.str() ==
          "n,a_exact,a_float,b_exact,b_float\n"
          "0,-1/4,-0.25,1/4,0.25\n"
          "1,1/24*pi^-1/2,0.023507899314489846,-1/48,-0.020833333333333332\n"
          "2,1/16,0.0625,-1/32,-0.03125\n"
          "3,-7/1440*pi^-1/2,-0.0027425882533571489,7/11520,0.0006076388888888889\n");
}

TEST_CASE("r_function") {
    CHECK(r_function(1e-12) == doctest::Approx(0.25).epsilon(1e-11));
    CHECK(r_function(1.0) == doctest::Approx(closed_form_r(1.0)).epsilon(1e-15));
    CHECK(r_function(1.0) == doctest::Approx(0.2014634088).epsilon(1e-9));
    CHECK(r_function(20.0) == doctest::Approx(closed_form_r(20.0)).epsilon(1e-12));
    CHECK(r_function(200.0) == doctest::Approx(-0.0025).epsilon(1e-12));
    double series_at_switch = 0.0;
    for (unsigned n = 30; n-- > 0;) series_at_switch = series_at_switch * 0.25 + default_table().b_value(n);
    CHECK(std::abs(r_function(0.25) - series_at_switch) < 1e-14);
    CHECK_THROWS_AS(r_function(0.0), DomainError);

    // Tail after k terms is at most u^{k+1} times the sum of the remaining |b_n|.
    for (unsigned k : {5u, 10u, 15u}) {
        double c = 0.0;
        for (unsigned n = k + 1; n <= 60; ++n) c += std::abs(default_table().b_value(n));
        for (double u = 0.02; u <= 1.0; u += 0.02) {
            double partial = 0.0;
            for (unsigned n = 0; n <= k; ++n) partial += default_table().b_value(n) * std::pow(u, n);
            CHECK(std::abs(r_function(u) - partial) <= 1.01 * c * std::pow(u, k + 1) + 4e-15);
        }
    }
}

TEST_CASE("evaluate_expansion") {
    const auto v = evaluate_expansion(1.0, 0);
    const double want = -(std::log(4 * M_PI) + kEulerGamma / 2) / (2 * std::sqrt(M_PI)) + 2 * std::exp(0.25) - 0.25;
    CHECK(v.total == doctest::Approx(want).epsilon(1e-15));
    for (double t : {1e-4, 1e-2, 0.5}) {
        const auto e = evaluate_expansion(t, 7);
        CHECK(e.total == doctest::Approx(e.divergent_part + e.exponential_part + e.series_part).epsilon(1e-15));
    }
    // Replacing 2e^{t/4} by 2 + t/2 gives the six-term expression.
    for (double t : {1e-4, 1e-3, 0.3}) {
        const auto e = evaluate_expansion(t, 2);
        CHECK(e.divergent_part + 2.0 + t / 2 + e.series_part ==
              doctest::Approx(heat_trace::six_term_approximation(t)).epsilon(1e-15));
    }
    CHECK_THROWS(evaluate_expansion(0.1, default_table().max_order() + 1));
}

TEST_CASE("optimal truncation") {
    auto scan = [](double t) {
        unsigned best = 0;
        double best_mag = std::abs(default_table().a_value(0));
        for (unsigned n = 1; n <= default_table().max_order(); ++n) {
            const double mag = std::abs(default_table().a_value(n)) * std::pow(t, 0.5 * n);
            if (mag < best_mag) {
                best_mag = mag;
                best = n;
            }
        }
        return best;
    };
    CHECK(optimal_truncation(0.01) == scan(0.01));
    unsigned prev = optimal_truncation(1e-6);
    for (double t = 1e-6; t <= 1.0; t *= 1.5) {
        const unsigned n = optimal_truncation(t);
        CHECK(n == scan(t));
        CHECK(n <= prev);
        prev = n;
    }
    CHECK(optimal_truncation(1.0) < optimal_truncation(0.1));
}

TEST_CASE("expansion against the spectral side") {
    const auto& zeros = zeros::bundled_zeros();
    for (double t : {1e-4, 1e-3, 1e-2, 1e-1}) {
        const unsigned n = optimal_truncation(t);
        const double spectral = heat_trace::spectral_trace(t, zeros).total;
        // The prime sum is invisible to the asymptotic series but not at finite t.
        const double rhs = spectral + explicit_formula::prime_sum(t);
        const double next = std::abs(default_table().a_value(std::min(n + 1, default_table().max_order()))) *
                            std::pow(t, 0.5 * (n + 1));
        CHECK(std::abs(evaluate_expansion(t, n).total - rhs) <= 10.0 * next + 1e-13);
    }
    const double t = 1e-2;
    CHECK(std::abs(evaluate_expansion(t, 10).total -
                   (heat_trace::spectral_trace(t, zeros).total + explicit_formula::prime_sum(t))) < 1e-11);
}

TEST_CASE("remainder bound") {
    for (unsigned k : {0u, 1u, 3u, 6u})
        CHECK(remainder_bound(4e-3, k) / remainder_bound(1e-3, k) == doctest::Approx(std::pow(2.0, k)).epsilon(1e-13));

    // The remainder of the kernel integral after b_0..b_{k-1}.
    for (double t : {1e-3, 1e-2, 1.0}) {
        const double kernel = explicit_formula::kernel_integral(t);
        double partial = 0.0;
        for (unsigned k = 0; k <= 8; ++k) {
            CHECK(std::abs(kernel - partial) <= remainder_bound(t, k));
            partial += default_table().b_value(k) * gaussian_moment(t, k);
        }
    }

    double grid_max = 0.0;
    for (double u = 0.0; u <= 100.0; u += 0.01) grid_max = std::max(grid_max, std::abs(third_derivative_fd(u)));
    CHECK(derivative_sup(3) == doctest::Approx(grid_max).epsilon(0.1));
    CHECK(std::abs(taylor_kernel_derivative(3, 1.3) - third_derivative_fd(1.3)) < 1e-7);
    CHECK(taylor_kernel(1.0) == doctest::Approx(2.0 * r_function(1.0)).epsilon(1e-15));
}
