#pragma once

#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include "zeta_heat/numerics/quadrature.hpp"
#include "zeta_heat/zeros.hpp"

namespace zeta_heat::explicit_formula {

using numerics::QuadratureSpec;

/// F_t on the multiplicative group, normalized so its Fourier transform
/// int F_t(u) u^{-is} d*u equals exp(-t s^2).
class GaussianTestFunction {
public:
    explicit GaussianTestFunction(double t);

    double t() const noexcept { return t_; }
    /// F_t(e^y) = exp(-y^2 / 4t) / (2 sqrt(pi t)); even in y.
    double at_log(double y) const noexcept;
    /// F_t(1) = 1 / (2 sqrt(pi t)).
    double at_one() const noexcept { return at_one_; }
    /// exp(-t s^2).
    double fourier(double s) const noexcept;

private:
    double t_;
    double at_one_;
};

// ---------------------------------------------------------------------------
// Primes

/// Sieve of Eratosthenes over [0, bound] answering von Mangoldt queries.
class VonMangoldtSieve {
public:
    explicit VonMangoldtSieve(std::uint64_t bound);

    std::uint64_t bound() const noexcept { return bound_; }
    bool is_prime(std::uint64_t n) const;
    /// Lambda(n) for 1 <= n <= bound().
    double operator()(std::uint64_t n) const;
    const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

private:
    std::uint64_t bound_;
    std::vector<bool> composite_;
    std::vector<std::uint32_t> primes_;
};

inline constexpr std::uint64_t kDefaultSieveBound = 1'000'000;
/// Largest prime cutoff prime_sum will sieve to.
inline constexpr std::uint64_t kMaxPrimeCutoff = std::uint64_t{1} << 27;

/// Lambda(n): log p if n is a power of the prime p, else 0. Backed by a shared
/// sieve that grows on demand.
double von_mangoldt(std::uint64_t n);

/// t_0 = log(6) / 8, the largest t for which psi_bound holds.
double psi_bound_limit();

/// 4 (pi^2/6 - 1) exp(-(log 2)^2 / 4t) / sqrt(pi t) for 0 < t <= t_0.
double psi_bound(double t);

/// Smallest power-of-two cutoff N for which the omitted tail
/// sum_{n>N} n^{-log N / 4t} / sqrt(pi t) is below epsilon.
std::uint64_t prime_cutoff(double t, double epsilon);

/// psi(t) = sum_{2<=n<=N} Lambda(n) n^{-1/2} exp(-(log n)^2 / 4t) / sqrt(pi t).
double prime_sum_to(double t, std::uint64_t cutoff);
/// psi(t) with the cutoff chosen by prime_cutoff(t, epsilon).
double prime_sum(double t, double epsilon = 1e-15);

// ---------------------------------------------------------------------------
// Archimedean place

/// Pieces of W_R(F_t) = (log 4pi + gamma) F(1) + int_0^2 (F(e^u) - F(1))/u du
///                    + int_0^inf 2 F(e^u) r(u) du + int_2^inf F(e^u)/u du.
struct ArchimedeanTerms {
    double constant_term = 0.0;
    double log_integral = 0.0;
    double kernel_integral = 0.0;
    double tail_integral = 0.0;
    double error_estimate = 0.0;

    double total() const noexcept { return constant_term + log_integral + kernel_integral + tail_integral; }
};

/// The decomposition above. The second piece uses its closed form
/// (-log(1/t) - gamma - Gamma(0, 1/t)) / (4 sqrt(pi t)); the others are
/// integrated numerically.
ArchimedeanTerms w_arch_terms(double t, const QuadratureSpec& q = {});
double w_arch_quadrature(double t, const QuadratureSpec& q = {});

/// int_0^2 (F_t(e^u) - F_t(1))/u du by quadrature (cross-check of the closed form).
double log_integral_quadrature(double t, const QuadratureSpec& q = {});

/// int_0^inf 2 F_t(e^u) r(u) du.
double kernel_integral(double t, const QuadratureSpec& q = {});

/// W_R from the digamma form on the critical line,
///     (log pi) F_t(1) - (1/pi) int_0^inf Re psi(1/4 + i s/2) exp(-t s^2) ds.
double w_arch_digamma(double t, const QuadratureSpec& q = {});

/// W_R from the original single integral over [0, inf) with kernel
/// e^{u/2} / (e^u - e^{-u}); its integrand tends to F_t(1)/2 at u = 0.
double w_arch_direct(double t, const QuadratureSpec& q = {});

/// int_0^2 (1/(e^u - e^{-u}) - 1/(2u)) du + int_2^inf du / (e^u - e^{-u}); zero.
double kernel_split_anchor(const QuadratureSpec& q = {});

// ---------------------------------------------------------------------------
// Identity

struct IdentityReport {
    double t = 0.0;
    double spectral = 0.0;
    double arch_quadrature = 0.0;
    double arch_digamma = 0.0;
    double prime = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double abs_tol = 0.0;
    double rel_tol = 0.0;

    /// JSON object with the fields above; tolerances nested under "tolerances".
    std::string to_json() const;
};

/// Residual of sum_Z exp(-t rho^2) = 2 e^{t/4} - W_R(F_t) - psi(t).
IdentityReport verify_identity(double t, const zeros::ZeroList& zeros, const QuadratureSpec& q = {});

}  // namespace zeta_heat::explicit_formula
