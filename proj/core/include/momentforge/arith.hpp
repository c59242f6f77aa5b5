#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace momentforge {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Primes and factorization.
// ---------------------------------------------------------------------------

// Shared, lazily grown prime table.  Returns a snapshot containing every
// prime <= limit (possibly more).  The snapshot is immutable and safe to hold
// across later calls that grow the table.
std::shared_ptr<const std::vector<std::uint32_t>> primes_up_to(std::uint64_t limit);

struct Factorization {
    std::uint64_t n = 1;
    // (prime, exponent) with primes strictly increasing, exponents >= 1.
    std::vector<std::pair<std::uint64_t, int>> factors;
};

// Deterministic factorization for 1 <= n < 2^63.  Trial division by the prime
// table does all practical work (inputs in this library stay below ~1e7); a
// deterministic Miller-Rabin + Brent-rho backstop keeps the contract honest
// for larger inputs with two prime factors beyond the table.
Factorization factorize(std::uint64_t n);

bool is_prime(std::uint64_t n);

// Divisors of n in increasing order.
std::vector<std::uint64_t> divisors(std::uint64_t n);

// ---------------------------------------------------------------------------
// Multiplicative functions.
// ---------------------------------------------------------------------------

// Moebius function, in {-1, 0, 1}.
int mobius(std::uint64_t n);

// Euler totient.
std::uint64_t euler_phi(std::uint64_t n);

// Number of primitive characters mod q: the multiplicative function
// sum_{d*r = q} mu(d) phi(r).  (0 for q = 2 mod 4, q > 2.)
std::uint64_t phi_star(std::uint64_t q);

// Number of even primitive characters mod q, counted by enumerating the
// character group.  Satisfies |phi_star(q)/2 - phi_flat(q)| <= 1.
std::uint64_t phi_flat(std::uint64_t q);

// ---------------------------------------------------------------------------
// Shift sets.
// ---------------------------------------------------------------------------

// An ordered list of K >= 1 small complex shifts.  Convergence of every
// series downstream (local factors, Euler products, swap terms) requires the
// real parts to stay small; construction enforces |Re| <= 1/4 with a little
// headroom for the coprime-divisor-sum check, which runs at Re = 0.3.
class ShiftSet {
  public:
    explicit ShiftSet(std::vector<Complex> values);

    const std::vector<Complex>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    const Complex& operator[](std::size_t i) const { return values_[i]; }

    // Every element translated by dt (the set written A_t downstream).
    ShiftSet translated(Complex dt) const;
    // Every element negated.
    ShiftSet negated() const;

    // K equal shifts (usually zero).
    static ShiftSet uniform(std::size_t k, Complex value = {0.0, 0.0});

    double max_abs_real() const;

  private:
    std::vector<Complex> values_;
};

// ---------------------------------------------------------------------------
// Generalized divisor sums.
// ---------------------------------------------------------------------------

// sigma_shifted(A, n) = sum over ordered factorizations n = m_1 ... m_K of
// prod_j m_j^(-a_j), where a_j runs over A.  Multiplicative in n; at
// A = {0,...,0} it is the K-fold divisor function.  Satisfies
// sigma_shifted(A.translated(t), n) = sigma_shifted(A, n) * n^(-t).
Complex sigma_shifted(const ShiftSet& A, std::uint64_t n);

// Local building block: sigma_shifted(A, p^e), i.e. the complete homogeneous
// symmetric polynomial of degree e in the variables p^(-a_j).  Cheap enough
// to evaluate term-by-term inside local series.
Complex sigma_prime_power(const ShiftSet& A, double p, int e);

// Same, precomputed for e = 0..e_max in one pass (used by the local series,
// which consume consecutive powers).
std::vector<Complex> sigma_prime_power_row(const ShiftSet& A, double p, int e_max);

} // namespace momentforge
