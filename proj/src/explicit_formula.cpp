#include "zeta_heat/explicit_formula.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>

#include <json.hpp>

#include "zeta_heat/errors.hpp"
#include "zeta_heat/expansion.hpp"
#include "zeta_heat/heat_trace.hpp"
#include "zeta_heat/numerics/summation.hpp"
#include "zeta_heat/special_numbers.hpp"

namespace zeta_heat::explicit_formula {
namespace {

constexpr double kPi = std::numbers::pi;
// exp(-x) underflows to zero past this.
constexpr double kUnderflowExponent = 700.0;

// Breakpoints p_0 < p_1 < ... keeping only those inside (lo, hi).
std::vector<double> breakpoints(double lo, double hi, std::initializer_list<double> interior) {
    std::vector<double> pts{lo};
    for (double p : interior)
        if (p > lo && p < hi) pts.push_back(p);
    std::sort(pts.begin() + 1, pts.end());
    pts.push_back(hi);
    return pts;
}

}  // namespace

GaussianTestFunction::GaussianTestFunction(double t) : t_(t), at_one_(0.5 / std::sqrt(kPi * t)) {
    if (!(t > 0.0)) throw DomainError("GaussianTestFunction: requires t > 0");
}

double GaussianTestFunction::at_log(double y) const noexcept { return at_one_ * std::exp(-y * y / (4.0 * t_)); }

double GaussianTestFunction::fourier(double s) const noexcept { return std::exp(-t_ * s * s); }

// ---------------------------------------------------------------------------

VonMangoldtSieve::VonMangoldtSieve(std::uint64_t bound) : bound_(std::max<std::uint64_t>(bound, 2)) {
    composite_.assign(bound_ + 1, false);
    composite_[0] = composite_[1] = true;
    for (std::uint64_t p = 2; p * p <= bound_; ++p)
        if (!composite_[p])
            for (std::uint64_t m = p * p; m <= bound_; m += p) composite_[m] = true;
    for (std::uint64_t n = 2; n <= bound_; ++n)
        if (!composite_[n]) primes_.push_back(static_cast<std::uint32_t>(n));
}

bool VonMangoldtSieve::is_prime(std::uint64_t n) const {
    if (n > bound_) throw DomainError("VonMangoldtSieve: query beyond sieve bound");
    return !composite_[n];
}

double VonMangoldtSieve::operator()(std::uint64_t n) const {
    if (n < 2) return 0.0;
    if (n > bound_) throw DomainError("VonMangoldtSieve: query beyond sieve bound");
    for (std::uint32_t p : primes_) {
        if (static_cast<std::uint64_t>(p) * p > n) break;
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
        }
    }
    return std::log(static_cast<double>(n));  // n itself is prime
}

namespace {

std::shared_mutex sieve_mutex;
std::shared_ptr<const VonMangoldtSieve> shared_sieve_ptr;

std::shared_ptr<const VonMangoldtSieve> shared_sieve(std::uint64_t at_least) {
    {
        std::shared_lock lock(sieve_mutex);
        if (shared_sieve_ptr && shared_sieve_ptr->bound() >= at_least) return shared_sieve_ptr;
    }
    std::unique_lock lock(sieve_mutex);
    if (!shared_sieve_ptr || shared_sieve_ptr->bound() < at_least) {
        std::uint64_t bound = shared_sieve_ptr ? shared_sieve_ptr->bound() : kDefaultSieveBound;
        while (bound < at_least) bound *= 2;
        shared_sieve_ptr = std::make_shared<const VonMangoldtSieve>(bound);
    }
    return shared_sieve_ptr;
}

double von_mangoldt_trial(std::uint64_t n) {
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
        }
    }
    return std::log(static_cast<double>(n));
}

}  // namespace

double von_mangoldt(std::uint64_t n) {
    if (n < 2) return 0.0;
    if (n > kMaxPrimeCutoff) return von_mangoldt_trial(n);
    return (*shared_sieve(n))(n);
}

double psi_bound_limit() { return std::log(6.0) / 8.0; }

double psi_bound(double t) {
    if (!(t > 0.0)) throw DomainError("psi_bound: requires t > 0");
    if (t > psi_bound_limit()) throw DomainError("psi_bound: only valid for t <= log(6)/8");
    const double l2 = std::log(2.0);
    return 4.0 * (kPi * kPi / 6.0 - 1.0) * std::exp(-l2 * l2 / (4.0 * t)) / std::sqrt(kPi * t);
}

std::uint64_t prime_cutoff(double t, double epsilon) {
    if (!(t > 0.0)) throw DomainError("prime_cutoff: requires t > 0");
    if (!(epsilon > 0.0)) throw DomainError("prime_cutoff: requires epsilon > 0");
    const double norm = 1.0 / std::sqrt(kPi * t);
    double last_tail = std::numeric_limits<double>::infinity();
    for (std::uint64_t n = 4; n <= kMaxPrimeCutoff; n *= 2) {
        // For m > N: exp(-(log m)^2/4t) <= m^{-s} with s = log N / 4t, and
        // sum_{m>N} m^{-s} <= N^{1-s} / (s-1).
        const double s = std::log(static_cast<double>(n)) / (4.0 * t);
        if (s <= 1.0) continue;
        const double log_tail = (1.0 - s) * std::log(static_cast<double>(n)) - std::log(s - 1.0);
        last_tail = norm * std::exp(log_tail);
        if (last_tail < epsilon) return n;
    }
    throw AccuracyError("prime_sum: cutoff for t = " + std::to_string(t) + " exceeds sieve limit",
                        std::numeric_limits<double>::quiet_NaN(), last_tail);
}

double prime_sum_to(double t, std::uint64_t cutoff) {
    if (!(t > 0.0)) throw DomainError("prime_sum: requires t > 0");
    if (cutoff > kMaxPrimeCutoff) throw DomainError("prime_sum: cutoff exceeds sieve limit");
    const auto sieve = shared_sieve(cutoff);
    const double inv4t = 1.0 / (4.0 * t);
    numerics::CompensatedSum sum;
    for (std::uint32_t p : sieve->primes()) {
        if (p > cutoff) break;
        const double log_p = std::log(static_cast<double>(p));
        if (log_p * log_p * inv4t > kUnderflowExponent) break;
        for (std::uint64_t n = p; n <= cutoff; n *= p) {
            const double log_n = std::log(static_cast<double>(n));
            const double exponent = log_n * log_n * inv4t;
            if (exponent > kUnderflowExponent) break;
            sum += log_p * std::exp(-0.5 * log_n - exponent);
            if (n > cutoff / p) break;
        }
    }
    return sum.value() / std::sqrt(kPi * t);
}

double prime_sum(double t, double epsilon) { return prime_sum_to(t, prime_cutoff(t, epsilon)); }

// ---------------------------------------------------------------------------

namespace {

numerics::QuadratureResult kernel_integral_result(double t, const QuadratureSpec& q) {
    const GaussianTestFunction f(t);
    const double rt = std::sqrt(t);
    const double u_max = 2.0 * rt * std::sqrt(kUnderflowExponent);
    auto integrand = [&f](double u) { return u > 0.0 ? 2.0 * f.at_log(u) * expansion::r_function(u) : 0.5 * f.at_one(); };
    const auto pts = breakpoints(0.0, u_max, {2.0 * rt, 8.0 * rt});
    return numerics::integrate_pieces(integrand, pts, q);
}

}  // namespace

double kernel_integral(double t, const QuadratureSpec& q) { return kernel_integral_result(t, q).value; }

double log_integral_quadrature(double t, const QuadratureSpec& q) {
    const GaussianTestFunction f(t);
    const double rt = std::sqrt(t);
    auto integrand = [&f, t](double u) {
        if (u == 0.0) return 0.0;
        return f.at_one() * std::expm1(-u * u / (4.0 * t)) / u;
    };
    const auto pts = breakpoints(0.0, 2.0, {2.0 * rt, 8.0 * rt});
    return numerics::integrate_pieces(integrand, pts, q).value;
}

ArchimedeanTerms w_arch_terms(double t, const QuadratureSpec& q) {
    const GaussianTestFunction f(t);
    const double s = std::sqrt(kPi * t);
    ArchimedeanTerms terms;
    terms.constant_term = (std::log(4.0 * kPi) + kEulerGamma) * f.at_one();

    const double gamma0 = special_numbers::incomplete_gamma0(1.0 / t);
    terms.log_integral = (-std::log(1.0 / t) - kEulerGamma - gamma0) / (4.0 * s);

    const double rt = std::sqrt(t);
    const double u_max = 2.0 * rt * std::sqrt(kUnderflowExponent);
    {
        const auto r = kernel_integral_result(t, q);
        terms.kernel_integral = r.value;
        terms.error_estimate += r.error_estimate;
    }
    if (u_max > 2.0) {
        auto integrand = [&f](double u) { return f.at_log(u) / u; };
        const auto pts = breakpoints(2.0, u_max, {2.0 + 2.0 * rt, 2.0 + 8.0 * rt});
        const auto r = numerics::integrate_pieces(integrand, pts, q);
        terms.tail_integral = r.value;
        terms.error_estimate += r.error_estimate;
    }
    return terms;
}

double w_arch_quadrature(double t, const QuadratureSpec& q) { return w_arch_terms(t, q).total(); }

double w_arch_digamma(double t, const QuadratureSpec& q) {
    const GaussianTestFunction f(t);
    // On w = 1/2 + i s the Mellin transform of f is exp(-t s^2), and the
    // integrand is even in s.
    auto integrand = [&f](double s) {
        const double re_psi = special_numbers::digamma(std::complex<double>(0.25, 0.5 * s)).real();
        return re_psi * f.fourier(s);
    };
    const double rt = std::sqrt(t);
    const double s_max = std::sqrt(kUnderflowExponent) / rt;
    const auto pts = breakpoints(0.0, s_max, {1.0 / rt, 4.0 / rt});
    const double integral = numerics::integrate_pieces(integrand, pts, q).value;
    return std::log(kPi) * f.at_one() - integral / kPi;
}

double w_arch_direct(double t, const QuadratureSpec& q) {
    const GaussianTestFunction f(t);
    auto integrand = [&f, t](double u) {
        if (u == 0.0) return 0.5 * f.at_one();
        // (2F(e^u) - 2 e^{-u/2} F(1)) e^{u/2} / (e^u - e^{-u})
        const double diff = std::expm1(-u * u / (4.0 * t)) - std::expm1(-0.5 * u);
        return 2.0 * f.at_one() * diff * std::exp(-0.5 * u) / -std::expm1(-2.0 * u);
    };
    const double rt = std::sqrt(t);
    const double gauss_max = 2.0 * rt * std::sqrt(kUnderflowExponent);
    const double u_max = std::max(gauss_max, 60.0);
    const auto pts = breakpoints(0.0, u_max, {2.0 * rt, 8.0 * rt, gauss_max, 1.0, 10.0});
    return (std::log(4.0 * kPi) + kEulerGamma) * f.at_one() + numerics::integrate_pieces(integrand, pts, q).value;
}

double kernel_split_anchor(const QuadratureSpec& q) {
    auto near = [](double u) {
        if (u < 1e-3) return -u / 12.0 + 7.0 * u * u * u / 720.0;
        return 0.5 / std::sinh(u) - 0.5 / u;
    };
    auto far = [](double u) { return 0.5 / std::sinh(u); };
    const double a = numerics::integrate(near, 0.0, 2.0, q).value;
    const std::array<double, 3> pts{2.0, 10.0, 80.0};
    const double b = numerics::integrate_pieces(far, pts, q).value;
    return a + b;
}

// ---------------------------------------------------------------------------

std::string IdentityReport::to_json() const {
    nlohmann::ordered_json j;
    j["t"] = t;
    j["spectral"] = spectral;
    j["arch_quadrature"] = arch_quadrature;
    j["arch_digamma"] = arch_digamma;
    j["prime"] = prime;
    j["rhs"] = rhs;
    j["residual"] = residual;
    j["tolerances"] = {{"abs_tol", abs_tol}, {"rel_tol", rel_tol}};
    return j.dump();
}

IdentityReport verify_identity(double t, const zeros::ZeroList& zeros, const QuadratureSpec& q) {
    IdentityReport report;
    report.t = t;
    heat_trace::TraceOptions options;
    options.epsilon = 1e-12;
    options.quadrature = q;
    report.spectral = heat_trace::spectral_trace(t, zeros, options).total;
    report.arch_quadrature = w_arch_quadrature(t, q);
    report.arch_digamma = w_arch_digamma(t, q);
    report.prime = prime_sum(t);
    report.rhs = 2.0 * std::exp(0.25 * t) - report.arch_quadrature - report.prime;
    report.residual = report.spectral - report.rhs;
    report.abs_tol = q.abs_tol;
    report.rel_tol = q.rel_tol;
    return report;
}

}  // namespace zeta_heat::explicit_formula
