#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "zeta_heat/special_numbers.hpp"

namespace zeta_heat::expansion {

/// value * pi^(pi_power / 2), with pi_power in {0, -1}.
struct ExactCoefficient {
    Rational value;
    int pi_power = 0;

    double to_double() const;
    /// "p/q" or "p/q*pi^-1/2".
    std::string to_string() const;

    friend bool operator==(const ExactCoefficient&, const ExactCoefficient&) = default;
};

/// Taylor coefficient of r(u) = e^{u/2}/(e^u - e^{-u}) - 1/(2u) at u = 0:
/// b_0 = 1/4, b_{2k-1} = -(1 - 2^{1-2k}) B_{2k} / (2 (2k)!),
/// b_{2k} = 2^{-2k} E(2k) / (4 (2k)!).
ExactCoefficient b_coeff(unsigned n);

/// Heat-trace coefficient a_n of t^{n/2}: a_0 = -1/4,
/// a_{2k-1} = Gamma(k) (2^{2k-1} - 1) B_{2k} / (2 sqrt(pi) (2k)!),
/// a_{2k} = -Gamma(k + 1/2) E(2k) / (4 sqrt(pi) (2k)!).
ExactCoefficient a_coeff(unsigned n);

/// Exact coefficient of t^{n/2} in 2 e^{t/4} + sum_n a_n t^{n/2}, i.e. a_n plus
/// the Taylor coefficient of 2 e^{t/4} when n is even.
ExactCoefficient combined_coeff(unsigned n);

inline constexpr unsigned kDefaultMaxOrder = 60;

class CoefficientTable {
public:
    explicit CoefficientTable(unsigned max_order = kDefaultMaxOrder);

    unsigned max_order() const noexcept { return max_order_; }
    const ExactCoefficient& a(unsigned n) const { return a_.at(n); }
    const ExactCoefficient& b(unsigned n) const { return b_.at(n); }
    double a_value(unsigned n) const { return a_float_.at(n); }
    double b_value(unsigned n) const { return b_float_.at(n); }

    /// Header "n,a_exact,a_float,b_exact,b_float"; floats at 17 significant
    /// digits.
    void write_csv(std::ostream& out) const;

private:
    unsigned max_order_;
    std::vector<ExactCoefficient> a_;
    std::vector<ExactCoefficient> b_;
    std::vector<double> a_float_;
    std::vector<double> b_float_;
};

/// Shared immutable table of order kDefaultMaxOrder, built on first use.
const CoefficientTable& default_table();

/// r(u) for u > 0. Uses the Taylor series below u = kRSeriesSwitch, where the
/// closed form loses digits to cancellation.
double r_function(double u);
inline constexpr double kRSeriesSwitch = 0.25;

struct ExpansionValue {
    double t = 0.0;
    unsigned order = 0;
    double divergent_part = 0.0;
    double exponential_part = 0.0;
    double series_part = 0.0;
    double total = 0.0;
};

/// Two divergent terms log(1/t)/(4 sqrt(pi t)) - (log 4pi + gamma/2)/(2 sqrt(pi t)).
double divergent_terms(double t);

/// Truncated small-t expansion of the heat trace through a_order t^{order/2}.
ExpansionValue evaluate_expansion(double t, unsigned order, const CoefficientTable& table = default_table());

/// Index of the smallest term |a_n| t^{n/2}, n <= table.max_order(); ties go
/// to the smaller index.
unsigned optimal_truncation(double t, const CoefficientTable& table = default_table());

/// R(u) = u e^{u/2} / sinh(u) - 1 = 2u r(u).
double taylor_kernel(double u);

/// n-th derivative of R at real u >= 0 (Cauchy integral on a circle that
/// stays inside the region of analyticity |Im z| < pi).
double taylor_kernel_derivative(unsigned n, double u);

/// c_n = sup_{u in [0, 200]} |R^{(n)}(u)|, by grid search and golden-section
/// refinement. Memoized; 1 <= n <= 40.
double derivative_sup(unsigned n);

/// Bound on |int_0^inf 2 F_t(e^u) r(u) du - sum_{n<k} b_n int_0^inf 2 F_t(e^u) u^n du|:
///     c_{k+1} Gamma((k+1)/2) / (sqrt(pi) (k+1)!) 2^{k-1} t^{k/2}.
/// The Taylor remainder of order k of R controls r after its first k
/// coefficients b_0..b_{k-1}.
double remainder_bound(double t, unsigned k);

/// int_0^inf 2 F_t(e^y) y^n dy = 2^n t^{n/2} Gamma((n+1)/2) / sqrt(pi).
double gaussian_moment(double t, unsigned n);

}  // namespace zeta_heat::expansion
