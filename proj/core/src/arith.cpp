#include "momentforge/arith.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace momentforge {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for 64-bit inputs (the 12-base set below is a
// proven witness set for n < 3.3e24).
bool miller_rabin_is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

// Brent's cycle-finding variant of Pollard rho; deterministic constant sweep.
std::uint64_t brent_rho(std::uint64_t n) {
    if ((n & 1) == 0) return 2;
    for (std::uint64_t c = 1; ; ++c) {
        std::uint64_t x = 2, y = 2, d = 1;
        std::uint64_t power = 1, lam = 1;
        while (d == 1) {
            if (power == lam) { x = y; power <<= 1; lam = 0; }
            y = (mulmod(y, y, n) + c) % n;
            ++lam;
            std::uint64_t diff = x > y ? x - y : y - x;
            d = std::gcd(diff, n);
        }
        if (d != n) return d;
    }
}

void factor_recursive(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    if (miller_rabin_is_prime(n)) { out.push_back(n); return; }
    std::uint64_t d = brent_rho(n);
    factor_recursive(d, out);
    factor_recursive(n / d, out);
}

struct PrimeCache {
    std::mutex mu;
    std::shared_ptr<const std::vector<std::uint32_t>> primes;
    std::uint64_t limit = 0;
};

PrimeCache& prime_cache() {
    static PrimeCache c;
    return c;
}

std::shared_ptr<const std::vector<std::uint32_t>> sieve(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    auto out = std::make_shared<std::vector<std::uint32_t>>();
    out->reserve(static_cast<std::size_t>(limit > 16 ? 1.2 * limit / std::log(static_cast<double>(limit)) : 8));
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out->push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

} // namespace

std::shared_ptr<const std::vector<std::uint32_t>> primes_up_to(std::uint64_t limit) {
    if (limit > 200000000ull)
        throw std::invalid_argument("primes_up_to: limit too large for an in-memory table");
    PrimeCache& c = prime_cache();
    std::lock_guard<std::mutex> lock(c.mu);
    if (limit <= c.limit && c.primes) return c.primes;
    std::uint64_t target = std::max<std::uint64_t>(limit, 1000000ull);
    c.primes = sieve(target);
    c.limit = target;
    return c.primes;
}

Factorization factorize(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    Factorization f;
    f.n = n;
    if (n == 1) return f;
    auto table = primes_up_to(1000000);
    std::uint64_t m = n;
    for (std::uint32_t p : *table) {
        std::uint64_t pp = p;
        if (pp * pp > m) break;
        if (m % pp == 0) {
            int e = 0;
            while (m % pp == 0) { m /= pp; ++e; }
            f.factors.emplace_back(pp, e);
        }
    }
    if (m > 1) {
        const std::uint64_t table_limit = 1000000ull;
        if (m / table_limit < table_limit) {
            // No prime factor <= 1e6 remains and m < 1e12, so m is prime.
            f.factors.emplace_back(m, 1);
        } else {
            std::vector<std::uint64_t> big;
            factor_recursive(m, big);
            std::sort(big.begin(), big.end());
            for (std::size_t i = 0; i < big.size();) {
                std::size_t j = i;
                while (j < big.size() && big[j] == big[i]) ++j;
                f.factors.emplace_back(big[i], static_cast<int>(j - i));
                i = j;
            }
        }
        std::sort(f.factors.begin(), f.factors.end());
    }
    return f;
}

bool is_prime(std::uint64_t n) { return miller_rabin_is_prime(n); }

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    Factorization f = factorize(n);
    std::vector<std::uint64_t> out{1};
    for (const auto& [p, e] : f.factors) {
        std::size_t base = out.size();
        std::uint64_t pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int mobius(std::uint64_t n) {
    Factorization f = factorize(n);
    int sign = 1;
    for (const auto& [p, e] : f.factors) {
        (void)p;
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

std::uint64_t euler_phi(std::uint64_t n) {
    Factorization f = factorize(n);
    std::uint64_t r = 1;
    for (const auto& [p, e] : f.factors) {
        std::uint64_t pe1 = 1;
        for (int k = 0; k < e - 1; ++k) pe1 *= p;
        r *= pe1 * (p - 1);
    }
    return r;
}

std::uint64_t phi_star(std::uint64_t q) {
    if (q == 0) throw std::invalid_argument("phi_star: q must be positive");
    Factorization f = factorize(q);
    std::uint64_t r = 1;
    for (const auto& [p, e] : f.factors) {
        if (e == 1) {
            r *= p - 2;  // phi(p) - phi(1)
        } else {
            std::uint64_t pe2 = 1;
            for (int k = 0; k < e - 2; ++k) pe2 *= p;
            r *= pe2 * (p - 1) * (p - 1);  // phi(p^e) - phi(p^(e-1))
        }
    }
    return r;
}

ShiftSet::ShiftSet(std::vector<Complex> values) : values_(std::move(values)) {
    if (values_.empty())
        throw std::invalid_argument("ShiftSet: at least one shift required");
    for (const Complex& v : values_) {
        if (std::abs(v.real()) > 0.45)
            throw std::invalid_argument("ShiftSet: |Re shift| must stay below 0.45 for series convergence");
    }
}

ShiftSet ShiftSet::translated(Complex dt) const {
    std::vector<Complex> v = values_;
    for (Complex& x : v) x += dt;
    return ShiftSet(std::move(v));
}

ShiftSet ShiftSet::negated() const {
    std::vector<Complex> v = values_;
    for (Complex& x : v) x = -x;
    return ShiftSet(std::move(v));
}

ShiftSet ShiftSet::uniform(std::size_t k, Complex value) {
    return ShiftSet(std::vector<Complex>(k, value));
}

double ShiftSet::max_abs_real() const {
    double m = 0;
    for (const Complex& v : values_) m = std::max(m, std::abs(v.real()));
    return m;
}

std::vector<Complex> sigma_prime_power_row(const ShiftSet& A, double p, int e_max) {
    // Complete homogeneous symmetric polynomials of the variables p^(-a_j),
    // built by absorbing one geometric factor 1/(1 - gamma_j X) at a time:
    // the in-place ascending update h[m] += gamma * h[m-1] implements
    // new_h = old_h / (1 - gamma X) exactly through order e_max.
    std::vector<Complex> h(static_cast<std::size_t>(e_max) + 1, Complex(0.0, 0.0));
    h[0] = 1.0;
    double lp = std::log(p);
    for (const Complex& a : A.values()) {
        Complex gamma = std::exp(-a * lp);
        for (int m = 1; m <= e_max; ++m) h[m] += gamma * h[m - 1];
    }
    return h;
}

Complex sigma_prime_power(const ShiftSet& A, double p, int e) {
    return sigma_prime_power_row(A, p, e)[static_cast<std::size_t>(e)];
}

Complex sigma_shifted(const ShiftSet& A, std::uint64_t n) {
    Factorization f = factorize(n);
    Complex r(1.0, 0.0);
    for (const auto& [p, e] : f.factors)
        r *= sigma_prime_power(A, static_cast<double>(p), e);
    return r;
}

} // namespace momentforge
