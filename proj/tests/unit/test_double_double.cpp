#include <doctest.h>

#include <random>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "zeta_heat/numerics/double_double.hpp"
#include "zeta_heat/numerics/quadrature.hpp"
#include "zeta_heat/numerics/summation.hpp"
#include "zeta_heat/errors.hpp"

using namespace zeta_heat;
using numerics::DoubleDouble;
using Big = boost::multiprecision::cpp_dec_float_50;

namespace {

Big big(const DoubleDouble& x) { return Big(x.hi()) + Big(x.lo()); }

double rel_err(const DoubleDouble& got, const Big& want) {
    return static_cast<double>(abs((big(got) - want) / want));
}

}  // namespace

TEST_CASE("arithmetic carries about 30 digits") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        const DoubleDouble a = DoubleDouble(u(rng)) + DoubleDouble(u(rng) * 1e-17);
        const DoubleDouble b = DoubleDouble(u(rng)) + DoubleDouble(u(rng) * 1e-17);
        CHECK(rel_err(a * b, big(a) * big(b)) < 1e-30);
        CHECK(rel_err(a / b, big(a) / big(b)) < 1e-30);
        const Big s = big(a) + big(b);
        if (abs(s) > 1e-3) CHECK(rel_err(a + b, s) < 1e-29);
    }
}

TEST_CASE("exp, log and sqrt against a 50-digit oracle") {
    for (double x : {-600.0, -531.0, -50.5, -1.0, -1e-9, 0.3, 2.0, 100.0}) {
        const DoubleDouble v(x);
        CHECK(rel_err(numerics::exp(v), boost::multiprecision::exp(Big(x))) < 1e-28);
    }
    // Near the bottom of the range the low word is subnormal.
    CHECK(rel_err(numerics::exp(DoubleDouble(-705.0)), boost::multiprecision::exp(Big(-705))) < 1e-15);
    CHECK(numerics::exp(DoubleDouble(-740.0)).to_double() == doctest::Approx(std::exp(-740.0)).epsilon(1e-2));
    for (double x : {1e-10, 0.5, 2.0, 10.0, 1e20}) {
        CHECK(rel_err(numerics::log(DoubleDouble(x)), boost::multiprecision::log(Big(x))) < 1e-29);
        CHECK(rel_err(numerics::sqrt(DoubleDouble(x)), boost::multiprecision::sqrt(Big(x))) < 1e-30);
    }
    CHECK(numerics::exp(DoubleDouble(-800.0)).to_double() == 0.0);
}

TEST_CASE("decimal parsing keeps digits beyond binary64") {
    const auto z = DoubleDouble::from_decimal("14.134725141734693790457251983562");
    REQUIRE(z);
    CHECK(rel_err(*z, Big("14.134725141734693790457251983562")) < 1e-31);
    CHECK(DoubleDouble::from_decimal("1.25e-3")->to_double() == 1.25e-3);
    CHECK(DoubleDouble::from_decimal("-2")->to_double() == -2.0);
    CHECK_FALSE(DoubleDouble::from_decimal("1.2.3"));
    CHECK_FALSE(DoubleDouble::from_decimal("12x"));
    CHECK_FALSE(DoubleDouble::from_decimal(""));
    CHECK_FALSE(DoubleDouble::from_decimal("1,5"));
}

TEST_CASE("constants") {
    CHECK(rel_err(numerics::dd_constants::pi, boost::math::constants::pi<Big>()) < 1e-31);
    CHECK(rel_err(numerics::dd_constants::euler_gamma, boost::math::constants::euler<Big>()) < 1e-31);
    CHECK(rel_err(numerics::dd_constants::log_4pi, log(4 * boost::math::constants::pi<Big>())) < 1e-31);
    CHECK(rel_err(numerics::dd_constants::sqrt_pi, sqrt(boost::math::constants::pi<Big>())) < 1e-31);
}

TEST_CASE("compensated sums recover cancelled mass") {
    numerics::CompensatedSum s;
    s += 1e16;
    s += 1.0;
    s += -1e16;
    CHECK(s.value() == 1.0);
    numerics::ExtendedSum e;
    e += DoubleDouble(1e30);
    e += DoubleDouble(1.0);
    e += DoubleDouble(-1e30);
    CHECK(e.value().to_double() == 1.0);
}

TEST_CASE("quadrature wrapper") {
    numerics::QuadratureSpec q;
    const auto r = numerics::integrate([](double x) { return std::exp(-x * x); }, 0.0, numerics::kInfinity, q);
    CHECK(r.value == doctest::Approx(std::sqrt(M_PI) / 2).epsilon(1e-15));
    const auto de = numerics::integrate([](double x) { return std::exp(-x); }, 0.0, numerics::kInfinity,
                                        q.with_scheme(numerics::QuadratureScheme::double_exponential));
    CHECK(de.value == doctest::Approx(1.0).epsilon(1e-15));
    const double pts[] = {0.0, 1.0, 2.0};
    CHECK(numerics::integrate_pieces([](double x) { return x; }, pts, q).value == doctest::Approx(2.0));

    numerics::QuadratureSpec bad;
    bad.abs_tol = 0.0;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = {};
    bad.max_refinements = 0;
    CHECK_THROWS_AS(bad.validate(), DomainError);

    numerics::QuadratureSpec tight;
    tight.abs_tol = 1e-300;
    tight.rel_tol = 1e-300;
    tight.max_refinements = 1;
    CHECK_THROWS_AS(numerics::integrate([](double x) { return std::sin(1 / x); }, 1e-6, 1.0, tight), AccuracyError);
}
