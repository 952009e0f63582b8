#include "zeta_heat/numerics/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>
#include <cstdio>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "zeta_heat/errors.hpp"

namespace zeta_heat::numerics {

std::string_view to_string(QuadratureScheme scheme) noexcept {
    switch (scheme) {
        case QuadratureScheme::adaptive_gauss: return "adaptive-gauss";
        case QuadratureScheme::double_exponential: return "double-exponential";
    }
    return "unknown";
}

void QuadratureSpec::validate() const {
    const bool abs_ok = std::isfinite(abs_tol) && abs_tol > 0.0;
    const bool rel_ok = std::isfinite(rel_tol) && rel_tol > 0.0;
    if (!abs_ok && !rel_ok) throw DomainError("quadrature: at least one tolerance must be finite and positive");
    if (abs_tol < 0.0 || rel_tol < 0.0) throw DomainError("quadrature: tolerances must be nonnegative");
    if (max_refinements < 1) throw DomainError("quadrature: max_refinements must be >= 1");
}

namespace {

std::string fmt_g(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

double boost_tolerance(const QuadratureSpec& spec) {
    // Boost's integrators stop on a relative criterion; a tiny value lets the
    // absolute criterion below decide.
    return (std::isfinite(spec.rel_tol) && spec.rel_tol > 0.0) ? spec.rel_tol : 1e-15;
}

struct Panel {
    double a, b, value, error, l1;
    int depth;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk_panel(const Integrand& f, double a, double b, int depth) {
    // Boost's rule reports |K - G| in the coordinates of [-1, 1], so the
    // Jacobian is folded into the integrand.
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    auto g = [&f, mid, half](double s) { return half * f(mid + half * s); };
    Panel p{a, b, 0.0, 0.0, 0.0, depth};
    p.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, -1.0, 1.0, 0, 0.0, &p.error, &p.l1);
    return p;
}

// Global adaptive bisection: always split the panel with the largest error.
QuadratureResult adaptive_gauss_kronrod(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
    constexpr std::size_t kMaxPanels = 4096;
    const double abs_tol = std::isfinite(spec.abs_tol) ? spec.abs_tol : 0.0;
    const double rel_tol = std::isfinite(spec.rel_tol) ? spec.rel_tol : 0.0;
    std::priority_queue<Panel> heap;
    heap.push(gk_panel(f, a, b, 0));
    double value = heap.top().value, error = heap.top().error, l1 = heap.top().l1;
    while (heap.size() < kMaxPanels) {
        const double floor = 64.0 * std::numeric_limits<double>::epsilon() * l1;
        if (error <= std::max({abs_tol, rel_tol * l1, floor})) break;
        const Panel worst = heap.top();
        if (worst.depth >= 2 * static_cast<int>(spec.max_refinements)) break;
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel left = gk_panel(f, worst.a, mid, worst.depth + 1);
        const Panel right = gk_panel(f, mid, worst.b, worst.depth + 1);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        l1 += left.l1 + right.l1 - worst.l1;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed the drift of the running updates.
    QuadratureResult r;
    std::vector<Panel> panels;
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    for (const Panel& p : panels) {
        r.value += p.value;
        r.error_estimate += p.error;
        r.l1_norm += p.l1;
    }
    return r;
}

QuadratureResult run(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
    QuadratureResult r;
    const double tol = boost_tolerance(spec);
    if (spec.scheme == QuadratureScheme::adaptive_gauss && std::isfinite(b)) {
        r = adaptive_gauss_kronrod(f, a, b, spec);
    } else if (spec.scheme == QuadratureScheme::adaptive_gauss) {
        r.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            f, a, b, spec.max_refinements, tol, &r.error_estimate, &r.l1_norm);
    } else if (std::isinf(b)) {
        boost::math::quadrature::exp_sinh<double> integrator(spec.max_refinements);
        std::size_t levels = 0;
        r.value = integrator.integrate(f, a, b, tol, &r.error_estimate, &r.l1_norm, &levels);
    } else {
        boost::math::quadrature::tanh_sinh<double> integrator(spec.max_refinements);
        std::size_t levels = 0;
        r.value = integrator.integrate(f, a, b, tol, &r.error_estimate, &r.l1_norm, &levels);
    }
    return r;
}

void check(const QuadratureResult& r, const QuadratureSpec& spec, double a, double b) {
    const double abs_tol = std::isfinite(spec.abs_tol) ? spec.abs_tol : 0.0;
    const double rel_tol = std::isfinite(spec.rel_tol) ? spec.rel_tol : 0.0;
    // The reported estimate is an a-posteriori bound; allow the roundoff floor.
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * r.l1_norm;
    const double allowed = std::max({abs_tol, rel_tol * r.l1_norm, floor});
    if (!std::isfinite(r.value) || r.error_estimate > allowed) {
        throw AccuracyError("quadrature did not converge on [" + fmt_g(a) + ", " +
                                fmt_g(b) + "]: error estimate " +
                                fmt_g(r.error_estimate) + " vs allowed " + fmt_g(allowed),
                            r.value, r.error_estimate);
    }
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
    spec.validate();
    if (a == b) return {};
    QuadratureResult r;
    try {
        r = run(f, a, b, spec);
    } catch (const std::exception& e) {
        throw AccuracyError(std::string("quadrature failed: ") + e.what(),
                            std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::infinity());
    }
    check(r, spec, a, b);
    return r;
}

QuadratureResult integrate_pieces(const Integrand& f, std::span<const double> points,
                                  const QuadratureSpec& spec) {
    QuadratureResult total;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const QuadratureResult piece = integrate(f, points[i], points[i + 1], spec);
        total.value += piece.value;
        total.error_estimate += piece.error_estimate;
        total.l1_norm += piece.l1_norm;
    }
    return total;
}

}  // namespace zeta_heat::numerics
