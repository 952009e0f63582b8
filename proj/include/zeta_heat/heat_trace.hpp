#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "zeta_heat/numerics/double_double.hpp"
#include "zeta_heat/numerics/quadrature.hpp"
#include "zeta_heat/zeros.hpp"

namespace zeta_heat::heat_trace {

using numerics::DoubleDouble;

enum class PrecisionMode { standard, extended };

struct TraceOptions {
    double epsilon = 1e-13;
    /// Add the density-model integral above the truncation height.
    bool tail = true;
    PrecisionMode precision = PrecisionMode::extended;
    /// Sum zeros up to this height instead of the automatic choice.
    std::optional<double> truncation_height;
    unsigned jobs = 1;
    numerics::QuadratureSpec quadrature;
};

/// sum over +-rho of exp(-t rho^2), split into the zeros actually summed and
/// a model tail for the ones above truncation_height.
struct TraceReport {
    double t = 0.0;
    double partial_sum = 0.0;
    double tail_estimate = 0.0;
    double total = 0.0;
    std::size_t zeros_used = 0;
    double truncation_height = 0.0;
    double error_budget = 0.0;
    /// partial_sum + tail_estimate without the final rounding to binary64.
    DoubleDouble total_extended;
};

/// Height T above which the zeros contribute less than epsilon (envelope of
/// the density-model tail plus one zero pair of fluctuation).
double required_height(double t, double epsilon);

/// 2 int_T^inf (1/2pi) log(E/2pi) exp(-t E^2) dE.
numerics::QuadratureResult tail_integral(double t, double height, const numerics::QuadratureSpec& q = {});

/// Throws CoverageError when the zeros stop below required_height and the
/// tail is disabled.
TraceReport spectral_trace(double t, const zeros::ZeroList& zeros, const TraceOptions& options = {});

/// log(1/t)/(4 sqrt(pi t)) - gamma/(4 sqrt(pi t)) - log(4pi)/(2 sqrt(pi t))
///   + 7/4 + sqrt(t)/(24 sqrt(pi)) + 9t/16
DoubleDouble six_term_approximation_extended(double t);
double six_term_approximation(double t);

/// spectral_trace(t).total - six_term_approximation(t), differenced in
/// double-double when options.precision is extended.
double discrepancy(double t, const zeros::ZeroList& zeros, const TraceOptions& options = {});

enum class FigureKind { trace_vs_a, discrepancy_vs_a };

struct FigureRow {
    double a = 0.0;
    double value = 0.0;
};

/// One row per a in the grid, evaluated at t = 1/a.
std::vector<FigureRow> figure_data(FigureKind kind, std::span<const double> a_grid, const zeros::ZeroList& zeros,
                                   const TraceOptions& options = {});

/// "a,value" with 17 significant digits and LF line endings.
void write_figure_csv(std::span<const FigureRow> rows, std::ostream& out);

}  // namespace zeta_heat::heat_trace
