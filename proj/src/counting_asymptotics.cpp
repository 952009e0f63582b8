#include "zeta_heat/counting_asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "zeta_heat/errors.hpp"
#include "zeta_heat/special_numbers.hpp"

namespace zeta_heat::counting_asymptotics {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUnderflowExponent = 700.0;

void require_positive(double t, const char* what) {
    if (!(t > 0.0)) throw DomainError(std::string(what) + ": requires t > 0");
}

// int_1^inf g(x) 2tx e^{-tx^2} dx with nodes around the Gaussian scale.
numerics::QuadratureResult against_weight(double t, double (*g)(double), const QuadratureSpec& q) {
    const double scale = 1.0 / std::sqrt(t);
    const double x_max = std::sqrt(1.0 + kUnderflowExponent / t);
    auto integrand = [t, g](double x) { return g(x) * 2.0 * t * x * std::exp(-t * x * x); };
    std::vector<double> pts{1.0};
    for (double p : {0.5 * scale, scale, 3.0 * scale})
        if (p > pts.back() && p < x_max) pts.push_back(p);
    pts.push_back(x_max);
    return numerics::integrate_pieces(integrand, pts, q);
}

double log_weight(double x) { return std::log(x); }
double xlogx_weight(double x) { return x * std::log(x) / kPi; }
double linear_weight(double x) { return x; }

}  // namespace

LeadingTerms leading_terms(double t) {
    require_positive(t, "leading_terms");
    const double s = std::sqrt(kPi * t);
    return {t, std::log(1.0 / t) / (4.0 * s), -(std::log(4.0 * kPi) + 0.5 * kEulerGamma) / (2.0 * s)};
}

double n_model(double x) {
    if (!(x > 0.0)) throw DomainError("n_model: requires x > 0");
    return 2.0 * x * (std::log(x / (2.0 * kPi)) - 1.0) / (2.0 * kPi);
}

double R_integral_quadrature(double t, const QuadratureSpec& q) {
    require_positive(t, "R_integral");
    return against_weight(t, log_weight, q).value;
}

double R_integral(double t, const QuadratureSpec& q) {
    require_positive(t, "R_integral");
    const double closed = 0.5 * special_numbers::incomplete_gamma0(t);
    const auto quad = against_weight(t, log_weight, q);
    const double tolerance = 100.0 * std::max(q.abs_tol, q.rel_tol * std::abs(closed)) + quad.error_estimate;
    if (std::abs(quad.value - closed) > tolerance)
        throw AccuracyError("R_integral: quadrature and Gamma(0,t)/2 disagree", closed, quad.value - closed);
    return closed;
}

double I_integral(double t, const QuadratureSpec& q) {
    require_positive(t, "I_integral");
    return against_weight(t, xlogx_weight, q).value;
}

double I_asymptote(double t) {
    require_positive(t, "I_asymptote");
    return (-2.0 * std::log(2.0) + 2.0 - kEulerGamma - std::log(t)) / (4.0 * std::sqrt(kPi * t));
}

double J_linear_part(double t, const QuadratureSpec& q) {
    require_positive(t, "J_linear_part");
    return (1.0 + std::log(2.0 * kPi)) / kPi * against_weight(t, linear_weight, q).value;
}

double J_integral(double t, const QuadratureSpec& q) {
    require_positive(t, "J_integral");
    return against_weight(t, [](double x) { return n_model(x); }, q).value;
}

double J_asymptote(double t) {
    require_positive(t, "J_asymptote");
    const double digamma_3_2 = special_numbers::digamma(1.5);
    return (-std::log(t) - 2.0 - 2.0 * std::log(2.0 * kPi) + digamma_3_2) / (4.0 * std::sqrt(kPi * t));
}

double J_lower_limit_correction(double t, const QuadratureSpec& q) {
    require_positive(t, "J_lower_limit_correction");
    auto integrand = [t](double x) { return x > 0.0 ? n_model(x) * 2.0 * t * x * std::exp(-t * x * x) : 0.0; };
    return numerics::integrate(integrand, 0.0, 1.0, q).value;
}

void Theorem51Report::write_csv(std::ostream& out) const {
    out << "t,J,I,R,leading,residual\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.J, r.I, r.R, r.leading,
                      r.residual);
        out << buf;
    }
}

Theorem51Report verify_theorem51(std::span<const double> t_grid, const zeros::ZeroList& zeros,
                                 const heat_trace::TraceOptions& options) {
    Theorem51Report report;
    const QuadratureSpec& q = options.quadrature;
    for (double t : t_grid) {
        if (!(t > 0.0 && t < 1.0)) throw DomainError("verify_theorem51: grid values must lie in (0, 1)");
        Theorem51Row row;
        row.t = t;
        row.J = J_integral(t, q);
        row.I = I_integral(t, q);
        row.R = R_integral(t, q);
        row.leading = leading_terms(t).total();
        row.spectral = heat_trace::spectral_trace(t, zeros, options).total;
        row.residual = row.spectral - row.leading;
        row.lower_limit_correction = J_lower_limit_correction(t, q);
        report.fitted_constant = std::max(report.fitted_constant, std::abs(row.residual) / std::log(1.0 / t));
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace zeta_heat::counting_asymptotics
