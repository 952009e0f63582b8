#include "zeta_heat/heat_trace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <thread>

#include "zeta_heat/errors.hpp"
#include "zeta_heat/numerics/summation.hpp"
#include "zeta_heat/special_numbers.hpp"

namespace zeta_heat::heat_trace {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUnderflowExponent = 745.0;
// Chunking is independent of the job count so results are bit-identical.
constexpr std::size_t kChunk = 512;

double tail_envelope(double t, double height) {
    const double decay = std::exp(-t * height * height);
    const double density = std::max(std::log(height / (2.0 * kPi)), 1.0) / kPi;
    return decay * (density / (2.0 * t * height) + 2.0 * (1.0 + std::log(height)));
}

template <class Accumulator, class Term>
Accumulator sum_chunk(std::span<const DoubleDouble> rho, double t, Term term) {
    Accumulator acc;
    for (const DoubleDouble& r : rho) acc += term(r, t);
    return acc;
}

DoubleDouble term_extended(const DoubleDouble& rho, double t) {
    return numerics::exp(-(square(rho) * DoubleDouble(t)));
}

double term_standard(const DoubleDouble& rho, double t) {
    const double r = rho.to_double();
    return std::exp(-t * r * r);
}

template <class ChunkFn, class Result>
void run_chunks(std::size_t n_chunks, unsigned jobs, ChunkFn fn, std::vector<Result>& out) {
    out.resize(n_chunks);
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n_chunks)));
    if (jobs <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) out[c] = fn(c);
        return;
    }
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
            for (std::size_t c = w; c < n_chunks; c += jobs) out[c] = fn(c);
        });
    }
}

}  // namespace

double required_height(double t, double epsilon) {
    if (!(t > 0.0)) throw DomainError("required_height: requires t > 0");
    if (!(epsilon > 0.0)) throw DomainError("required_height: requires epsilon > 0");
    double lo = std::max(2.0 * kPi * std::numbers::e, std::sqrt(0.25 / t));
    if (tail_envelope(t, lo) <= epsilon) return lo;
    double hi = 2.0 * lo;
    while (tail_envelope(t, hi) > epsilon) hi *= 2.0;
    for (int i = 0; i < 100 && hi - lo > 1e-9 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (tail_envelope(t, mid) > epsilon ? lo : hi) = mid;
    }
    return hi;
}

numerics::QuadratureResult tail_integral(double t, double height, const numerics::QuadratureSpec& q) {
    // E = T + x; the integrand has decayed past underflow by x_max.
    const double x_max = std::sqrt(height * height + kUnderflowExponent / t) - height;
    if (t * height * height > kUnderflowExponent) return {};
    auto integrand = [t, height](double x) {
        const double e = height + x;
        const double density = std::log(e / (2.0 * kPi)) / kPi;
        return density * std::exp(-t * x * (2.0 * height + x));
    };
    const double scale = std::exp(-t * height * height);
    // Below this the whole tail is far under any meaningful epsilon.
    if (scale < 1e-290) return {};
    const double width = 1.0 / (2.0 * t * height + std::sqrt(t));
    std::vector<double> pts{0.0};
    for (double p : {width, 8.0 * width})
        if (p < x_max) pts.push_back(p);
    pts.push_back(x_max);
    // The absolute tolerance applies to the scaled result.
    numerics::QuadratureSpec unscaled = q;
    unscaled.abs_tol = q.abs_tol / scale;
    auto r = numerics::integrate_pieces(integrand, pts, unscaled);
    r.value *= scale;
    r.error_estimate *= scale;
    r.l1_norm *= scale;
    return r;
}

TraceReport spectral_trace(double t, const zeros::ZeroList& zeros, const TraceOptions& options) {
    if (!(t > 0.0)) throw DomainError("spectral_trace: requires t > 0");
    if (zeros.empty()) throw CoverageError("spectral_trace: empty zero list");

    const double needed = required_height(t, options.epsilon);
    if (!options.tail && zeros.max_height < needed)
        throw CoverageError("spectral_trace: zeros cover height " + std::to_string(zeros.max_height) + " but t = " +
                            std::to_string(t) + " needs " + std::to_string(needed) + " with the tail disabled");

    // By default every term that does not underflow is summed.
    double height = options.truncation_height.value_or(std::max(needed, std::sqrt(kUnderflowExponent / t)));
    height = std::min(height, zeros.max_height);

    const auto end = std::upper_bound(zeros.ordinates.begin(), zeros.ordinates.end(), DoubleDouble(height));
    const std::span<const DoubleDouble> used(zeros.ordinates.data(), static_cast<std::size_t>(end - zeros.ordinates.begin()));
    const std::size_t n_chunks = (used.size() + kChunk - 1) / kChunk;
    auto chunk_span = [&](std::size_t c) { return used.subspan(c * kChunk, std::min(kChunk, used.size() - c * kChunk)); };

    TraceReport report;
    report.t = t;
    report.zeros_used = used.size();
    report.truncation_height = height;

    DoubleDouble partial;
    double rounding = 0.0;
    if (options.precision == PrecisionMode::extended) {
        std::vector<DoubleDouble> partials;
        run_chunks(n_chunks, options.jobs,
                   [&](std::size_t c) { return sum_chunk<numerics::ExtendedSum>(chunk_span(c), t, term_extended).value(); },
                   partials);
        numerics::ExtendedSum total;
        for (const auto& p : partials) total += p;
        partial = total.value() * DoubleDouble(2.0);
        rounding = 8.0 * static_cast<double>(used.size()) * std::ldexp(1.0, -104) * partial.hi();
    } else {
        std::vector<double> partials;
        run_chunks(n_chunks, options.jobs,
                   [&](std::size_t c) { return sum_chunk<numerics::CompensatedSum>(chunk_span(c), t, term_standard).value(); },
                   partials);
        numerics::CompensatedSum total;
        for (double p : partials) total += p;
        partial = DoubleDouble(2.0 * total.value());
        // exp and the squared ordinate each contribute a few ulps per term.
        rounding = 4.0 * std::numeric_limits<double>::epsilon() * partial.hi() * (1.0 + t * height * height);
    }

    report.partial_sum = partial.to_double();
    double model_error = tail_envelope(t, height);
    if (options.tail) {
        numerics::QuadratureSpec q = options.quadrature;
        q.abs_tol = std::min(q.abs_tol, 1e-3 * options.epsilon);
        const auto tail = tail_integral(t, height, q);
        report.tail_estimate = std::max(tail.value, 0.0);
        model_error = report.tail_estimate + 2.0 * (1.0 + std::log(height)) * std::exp(-t * height * height) +
                      tail.error_estimate;
    }
    report.total_extended = partial + DoubleDouble(report.tail_estimate);
    report.total = report.total_extended.to_double();
    report.error_budget = model_error + rounding;
    return report;
}

DoubleDouble six_term_approximation_extended(double t) {
    if (!(t > 0.0)) throw DomainError("six_term_approximation: requires t > 0");
    using namespace numerics::dd_constants;
    const DoubleDouble tt(t);
    const DoubleDouble root_pi_t = numerics::sqrt(pi * tt);
    const DoubleDouble log_inv_t = -numerics::log(tt);
    DoubleDouble v = log_inv_t / (DoubleDouble(4.0) * root_pi_t);
    v -= euler_gamma / (DoubleDouble(4.0) * root_pi_t);
    v -= log_4pi / (DoubleDouble(2.0) * root_pi_t);
    v += DoubleDouble(1.75);
    v += numerics::sqrt(tt) / (DoubleDouble(24.0) * sqrt_pi);
    v += DoubleDouble(9.0) * tt / DoubleDouble(16.0);
    return v;
}

double six_term_approximation(double t) {
    if (!(t > 0.0)) throw DomainError("six_term_approximation: requires t > 0");
    const double s = std::sqrt(kPi * t);
    return std::log(1.0 / t) / (4.0 * s) - kEulerGamma / (4.0 * s) - std::log(4.0 * kPi) / (2.0 * s) + 1.75 +
           std::sqrt(t) / (24.0 * std::sqrt(kPi)) + 9.0 * t / 16.0;
}

double discrepancy(double t, const zeros::ZeroList& zeros, const TraceOptions& options) {
    const TraceReport report = spectral_trace(t, zeros, options);
    if (options.precision == PrecisionMode::extended)
        return (report.total_extended - six_term_approximation_extended(t)).to_double();
    return report.total - six_term_approximation(t);
}

std::vector<FigureRow> figure_data(FigureKind kind, std::span<const double> a_grid, const zeros::ZeroList& zeros,
                                   const TraceOptions& options) {
    std::vector<FigureRow> rows;
    rows.reserve(a_grid.size());
    for (double a : a_grid) {
        if (!(a > 0.0)) throw DomainError("figure_data: grid values must be positive");
        const double t = 1.0 / a;
        const double value =
            kind == FigureKind::trace_vs_a ? spectral_trace(t, zeros, options).total : discrepancy(t, zeros, options);
        rows.push_back({a, value});
    }
    return rows;
}

void write_figure_csv(std::span<const FigureRow> rows, std::ostream& out) {
    out << "a,value\n";
    char buf[64];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", row.a, row.value);
        out << buf;
    }
}

}  // namespace zeta_heat::heat_trace
