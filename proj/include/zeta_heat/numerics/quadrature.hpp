#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string_view>

namespace zeta_heat::numerics {

enum class QuadratureScheme { adaptive_gauss, double_exponential };

std::string_view to_string(QuadratureScheme scheme) noexcept;

/// Tolerances for every 1-D integral in the library. An integral is accepted
/// when its error estimate is below max(abs_tol, rel_tol * L1) where L1 is
/// the integral of |f|.
struct QuadratureSpec {
    double abs_tol = 1e-15;
    double rel_tol = 1e-13;
    unsigned max_refinements = 15;
    QuadratureScheme scheme = QuadratureScheme::adaptive_gauss;

    /// Throws DomainError unless at least one tolerance is finite and
    /// positive and max_refinements >= 1.
    void validate() const;

    QuadratureSpec with_scheme(QuadratureScheme s) const {
        QuadratureSpec q = *this;
        q.scheme = s;
        return q;
    }
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    double l1_norm = 0.0;
};

using Integrand = std::function<double(double)>;

/// Integrates f over [a, b]; b may be +infinity. Throws AccuracyError
/// (carrying the best estimate) when the tolerance is not met.
QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec = {});

/// Integrates over consecutive pieces [p0,p1], [p1,p2], ...; the last point may
/// be +infinity. Useful to place nodes where the integrand has structure.
QuadratureResult integrate_pieces(const Integrand& f, std::span<const double> points,
                                  const QuadratureSpec& spec);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace zeta_heat::numerics
