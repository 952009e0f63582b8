#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "zeta_heat/heat_trace.hpp"
#include "zeta_heat/numerics/quadrature.hpp"
#include "zeta_heat/zeros.hpp"

namespace zeta_heat::counting_asymptotics {

using numerics::QuadratureSpec;

/// The two divergent heat-trace terms implied by the counting law.
struct LeadingTerms {
    double t = 0.0;
    double log_term = 0.0;    ///< log(1/t) / (4 sqrt(pi t))
    double const_term = 0.0;  ///< -(log 4pi + gamma/2) / (2 sqrt(pi t))

    double total() const noexcept { return log_term + const_term; }
};

LeadingTerms leading_terms(double t);

/// n(x) = 2x (log(x/2pi) - 1) / 2pi, twice the main term of N(E).
double n_model(double x);

/// int_1^inf log(x) 2tx e^{-tx^2} dx by quadrature.
double R_integral_quadrature(double t, const QuadratureSpec& q = {});
/// Closed form Gamma(0, t)/2, checked against the quadrature; throws
/// AccuracyError if the two disagree beyond tolerance.
double R_integral(double t, const QuadratureSpec& q = {});

/// (1/pi) int_1^inf x log(x) 2tx e^{-tx^2} dx.
double I_integral(double t, const QuadratureSpec& q = {});
/// (-2 log 2 + 2 - gamma - log t) / (4 sqrt(pi t)).
double I_asymptote(double t);

/// (1 + log 2pi)/pi * int_1^inf x 2tx e^{-tx^2} dx, the linear part of J.
double J_linear_part(double t, const QuadratureSpec& q = {});

/// int_1^inf n(x) 2tx e^{-tx^2} dx.
double J_integral(double t, const QuadratureSpec& q = {});
/// (-log t - 2 - 2 log 2pi + digamma(3/2)) / (4 sqrt(pi t)).
double J_asymptote(double t);

/// int_0^1 n(x) 2tx e^{-tx^2} dx: the O(t) difference between integrating J
/// from 0 and from 1.
double J_lower_limit_correction(double t, const QuadratureSpec& q = {});

struct Theorem51Row {
    double t = 0.0;
    double J = 0.0;
    double I = 0.0;
    double R = 0.0;
    double leading = 0.0;
    double spectral = 0.0;
    double residual = 0.0;  ///< spectral - leading
    double lower_limit_correction = 0.0;
};

struct Theorem51Report {
    std::vector<Theorem51Row> rows;
    /// max |residual| / log(1/t) over the grid.
    double fitted_constant = 0.0;

    /// "t,J,I,R,leading,residual"
    void write_csv(std::ostream& out) const;
};

/// Residual of the spectral trace against the two divergent terms on a grid of
/// t in (0, 1).
Theorem51Report verify_theorem51(std::span<const double> t_grid, const zeros::ZeroList& zeros,
                                 const heat_trace::TraceOptions& options = {});

}  // namespace zeta_heat::counting_asymptotics
