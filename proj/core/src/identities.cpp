#include "momentforge/identities.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "momentforge/characters.hpp"
#include "momentforge/local_factors.hpp"
#include "momentforge/power_series.hpp"
#include "momentforge/rng.hpp"
#include "momentforge/special.hpp"

namespace momentforge {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

std::string fmt(Complex z) {
    std::ostringstream os;
    os.precision(10);
    os << z.real();
    if (z.imag() != 0.0) os << (z.imag() >= 0 ? "+" : "") << z.imag() << "i";
    return os.str();
}

// Euler totient for every value up to n.
std::vector<std::uint32_t> phi_sieve(std::uint64_t n) {
    if (n > 50000000) throw std::invalid_argument("identity check: sieve bound too large");
    std::vector<std::uint32_t> phi(n + 1);
    for (std::uint64_t i = 0; i <= n; ++i) phi[i] = static_cast<std::uint32_t>(i);
    for (std::uint64_t p = 2; p <= n; ++p) {
        if (phi[p] != p) continue; // composite
        for (std::uint64_t k = p; k <= n; k += p) phi[k] -= phi[k] / p;
    }
    return phi;
}

// Smallest prime factor for every value up to n.
std::vector<std::uint32_t> spf_sieve(std::uint64_t n) {
    if (n > 50000000) throw std::invalid_argument("identity check: sieve bound too large");
    std::vector<std::uint32_t> spf(n + 1, 0);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (spf[i] != 0) continue;
        for (std::uint64_t k = i; k <= n; k += i)
            if (spf[k] == 0) spf[k] = static_cast<std::uint32_t>(i);
    }
    return spf;
}

// sum_{h <= x} 1/phi(h) ~ A log x with A = zeta(2) zeta(3) / zeta(6); the
// constant below bounds the tails of the 1/phi-weighted sums we truncate.
constexpr double kPhiHarmonic = 1.9436;

} // namespace

// ---------------------------------------------------------------------------
// Young's kernel identity.
// ---------------------------------------------------------------------------

IdentityReport verify_young(std::uint64_t seed, int draws, double tol) {
    IdentityReport rep;
    rep.name = "young";
    rep.tolerance = tol;
    double worst = 0.0;
    for (int d = 0; d < draws; ++d) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(d));
        double rez = rng.uniform(0.10, 0.90);
        double rew = rng.uniform(0.05, rez - 0.04);
        Complex z(rez, rng.uniform(-2.5, 2.5));
        Complex w(rew, rng.uniform(-2.5, 2.5));
        Complex lhs = h_total(w, z);
        Complex rhs = young_rhs(w, z);
        double rel = std::abs(lhs - rhs) / std::max(1e-280, std::abs(rhs));
        worst = std::max(worst, rel);
    }
    rep.residual = worst;
    rep.pass = worst < tol;
    rep.detail = "max relative deviation over " + std::to_string(draws) + " points";
    return rep;
}

// ---------------------------------------------------------------------------
// Convolution identity.
// ---------------------------------------------------------------------------

IdentityReport verify_convolution_identity(const std::vector<Complex>& gammas,
                                           const std::vector<Complex>& deltas,
                                           std::size_t order, double tol) {
    if (gammas.empty() || deltas.empty())
        throw std::invalid_argument("convolution identity: parameter lists must be nonempty");
    const Complex g1 = gammas[0], d1 = deltas[0];
    if (g1 == Complex(0.0) || d1 == Complex(0.0))
        throw std::invalid_argument("convolution identity: leading parameters must be nonzero");
    const Complex u = g1 * d1;
    const std::size_t N = order;

    PowerSeries C = series_from_params(gammas, N);
    PowerSeries D = series_from_params(deltas, N);
    PowerSeries E = hadamard_E(C, D);
    PowerSeries Ec = E_c(C, D, g1, N);
    PowerSeries Ed = E_d(C, D, d1, N);

    PowerSeries lhs =
        (PowerSeries::polynomial({Complex(1.0), Complex(-1.0)}, N) * (Ec + Ed))
            .scaled(Complex(1.0) - u) +
        PowerSeries::polynomial({Complex(-1.0) + 2.0 * u, -u}, N) * E;

    PowerSeries Ct = (C * PowerSeries::polynomial({Complex(1.0), -g1}, N)) /
                     PowerSeries::polynomial({Complex(1.0), -Complex(1.0) / d1}, N);
    PowerSeries Dt = (D * PowerSeries::polynomial({Complex(1.0), -d1}, N)) /
                     PowerSeries::polynomial({Complex(1.0), -Complex(1.0) / g1}, N);
    PowerSeries Et = hadamard_E(Ct, Dt);
    PowerSeries rhs =
        PowerSeries::polynomial({Complex(1.0), -Complex(1.0) / u}, N) * Et;

    IdentityReport rep;
    rep.name = "convolution";
    rep.tolerance = tol;
    rep.residual = max_abs_diff(lhs, rhs);
    rep.pass = rep.residual < tol;
    rep.detail = "J=" + std::to_string(gammas.size()) + " K=" + std::to_string(deltas.size()) +
                 " order=" + std::to_string(N);
    return rep;
}

// ---------------------------------------------------------------------------
// Swap-factor identities.
// ---------------------------------------------------------------------------

namespace {

struct SwapSets {
    Complex alpha_p, beta_p, z;
    ShiftSet a_star, b_star;
};

SwapSets make_swap_sets(const ShiftSet& A, const ShiftSet& B, std::size_t ai,
                        std::size_t bi) {
    if (ai >= A.size() || bi >= B.size())
        throw std::invalid_argument("swap identity: distinguished index out of range");
    Complex ap = A[ai], bp = B[bi];
    if (std::abs(ap + bp) < 1e-12)
        throw std::domain_error(
            "swap identity: alpha' + beta' must be nonzero; perturb the shifts");
    std::vector<Complex> as, bs;
    for (std::size_t j = 0; j < A.size(); ++j)
        if (j != ai) as.push_back(A[j]);
    as.push_back(-bp);
    for (std::size_t k = 0; k < B.size(); ++k)
        if (k != bi) bs.push_back(B[k]);
    bs.push_back(-ap);
    return {ap, bp, ap + bp, ShiftSet(std::move(as)), ShiftSet(std::move(bs))};
}

} // namespace

IdentityReport verify_swap_factor_identity(double p, const ShiftSet& A, const ShiftSet& B,
                                           std::size_t alpha_index, std::size_t beta_index,
                                           double tol) {
    SwapSets s = make_swap_sets(A, B, alpha_index, beta_index);
    const Complex pz = std::exp(-s.z * std::log(p)); // p^(-alpha'-beta')
    const double x = 1.0 / p;

    // (a) The simplified per-prime form.
    Complex b_star = B_p(p, s.a_star, s.b_star);
    Complex b = B_p(p, A, B);
    Complex bm = B_m(p, A, B, s.alpha_p);
    Complex bn = B_n(p, A, B, s.beta_p);
    Complex rhs1 = ((1.0 - x) * (1.0 - pz) * (bm + bn) +
                    (-1.0 + (2.0 - x) * pz) * b) /
                   (1.0 - x / pz); // denominator 1 - p^(-1+alpha'+beta')
    double resid1 = std::abs(b_star - rhs1);

    // (b) The prefactored cross-term against the phi_star-weighted series.
    Complex r = 1.0 / (1.0 + pz / (p - 1.0));
    Complex lhs2 = (1.0 - x) * (1.0 - x) / r / (1.0 - x / pz) *
                   Sigma_p_direct(p, A, B, s.alpha_p, s.beta_p);
    // sum_{j>=0} phi_star(p^j) / (B_{p^j}(A*,B*) p^(2j)): the j = 0 term is 1
    // (empty product), every later term divides by B_p(A*,B*) once.
    Complex series = 1.0;
    {
        Complex inv_b = 1.0 / b_star;
        double term1 = (p - 2.0) / (p * p);
        series += term1 * inv_b;
        double tj = (p - 1.0) * (p - 1.0) / (p * p * p * p); // j = 2
        for (int j = 2; j < 400; ++j) {
            series += tj * inv_b;
            if (tj < 1e-18) break;
            tj /= p;
        }
    }
    Complex rhs2 = b_star * (1.0 - x) * series;
    Complex closed = b_star * (1.0 - x) + x - 2.0 * x * x + x * x * x * x;
    double resid2 = std::abs(lhs2 - rhs2);
    double resid_closed = std::abs(rhs2 - closed);

    IdentityReport rep;
    rep.name = "swapfactor";
    rep.tolerance = tol;
    rep.residual = std::max({resid1, resid2, resid_closed});
    rep.pass = rep.residual < tol;
    rep.detail = "p=" + fmt(p) + " simplified=" + fmt(resid1) +
                 " prefactored=" + fmt(resid2) + " series-vs-closed=" + fmt(resid_closed);
    return rep;
}

IdentityReport verify_swap_cross_sum(double p, const ShiftSet& A, const ShiftSet& B,
                                     std::size_t alpha_index, std::size_t beta_index,
                                     bool literal_reading, double tol) {
    SwapSets s = make_swap_sets(A, B, alpha_index, beta_index);
    Complex direct = Sigma_p_direct(p, A, B, s.alpha_p, s.beta_p);
    Complex comb = literal_reading
                       ? Sigma_p_combination_literal(p, A, B, s.alpha_p, s.beta_p)
                       : Sigma_p_combination(p, A, B, s.alpha_p, s.beta_p);
    IdentityReport rep;
    rep.name = literal_reading ? "swapcross-literal" : "swapcross";
    rep.tolerance = tol;
    rep.residual = std::abs(direct - comb);
    rep.pass = rep.residual < tol;
    rep.detail = "p=" + fmt(p) + " direct=" + fmt(direct) + " combination=" + fmt(comb) +
                 (literal_reading ? " (misprint-candidate reading)" : "");
    return rep;
}

// ---------------------------------------------------------------------------
// Dirichlet series of 1/phi.
// ---------------------------------------------------------------------------

IdentityReport verify_phi_dirichlet_series(std::uint64_t a, std::uint64_t m, Complex s,
                                           std::uint64_t h_max) {
    if (a == 0 || m == 0)
        throw std::invalid_argument("phi series identity: a and m must be positive");
    if (std::gcd(a, m) != 1)
        throw std::invalid_argument("phi series identity: a and m must be coprime");
    if (s.real() <= 1.0)
        throw std::domain_error("phi series identity: requires Re s > 1 for truncation");
    if (h_max < 10)
        throw std::invalid_argument("phi series identity: h_max too small");

    std::vector<std::uint32_t> phi = phi_sieve(h_max);
    const double phi_a = static_cast<double>(euler_phi(a));
    const bool real_s = s.imag() == 0.0;

    Complex direct = 0.0;
    for (std::uint64_t h = 1; h <= h_max; ++h) {
        if (m != 1 && std::gcd(h, m) != 1) continue;
        std::uint64_t g = std::gcd(a, h);
        // phi(a h) = phi(a) phi(h) g / phi(g).
        double phiah = phi_a * static_cast<double>(phi[h]) * static_cast<double>(g) /
                       static_cast<double>(euler_phi(g));
        Complex hpow =
            real_s ? Complex(std::pow(static_cast<double>(h), 1.0 - s.real()), 0.0)
                   : std::exp((1.0 - s) * std::log(static_cast<double>(h)));
        direct += hpow / phiah;
    }

    Complex closed = zeta(s) * zeta(s + 1.0) * K_s(s) * E_factor(m, a, s) / phi_a;

    IdentityReport rep;
    rep.name = "phiseries";
    rep.residual = std::abs(direct - closed);
    rep.truncation_bound = kPhiHarmonic *
                           std::pow(static_cast<double>(h_max), 1.0 - s.real()) /
                           ((s.real() - 1.0) * phi_a);
    rep.tolerance = 3.0 * rep.truncation_bound;
    rep.pass = rep.residual <= rep.tolerance;
    rep.detail = "a=" + std::to_string(a) + " m=" + std::to_string(m) + " s=" + fmt(s) +
                 " h_max=" + std::to_string(h_max) + " direct=" + fmt(direct) +
                 " closed=" + fmt(closed);
    return rep;
}

// ---------------------------------------------------------------------------
// Sieved Moebius/phi identity at s = 1.
// ---------------------------------------------------------------------------

IdentityReport verify_mobius_phi_identity(std::uint64_t M, std::uint64_t N, std::uint64_t g,
                                          std::uint64_t a_max) {
    if (M == 0 || N == 0 || g == 0)
        throw std::invalid_argument("mobius-phi identity: arguments must be positive");
    if (std::gcd(M, N) != 1 || std::gcd(M, g) != 1 || std::gcd(N, g) != 1)
        throw std::invalid_argument("mobius-phi identity: M, N, g must be pairwise coprime");
    if (a_max < 10)
        throw std::invalid_argument("mobius-phi identity: a_max too small");

    const std::uint64_t MN = M * N;
    const std::uint64_t MNg = MN * g;
    const Complex one_s(1.0, 0.0);

    std::vector<std::uint32_t> phi = phi_sieve(a_max);
    std::vector<std::uint32_t> spf = spf_sieve(a_max);

    // Finite b-sum over squarefree divisors of g coprime to MN (automatic).
    Complex b_sum = 0.0;
    for (std::uint64_t b : divisors(g)) {
        int mu_b = mobius(b);
        if (mu_b == 0) continue;
        b_sum += static_cast<double>(mu_b) * R_s(b, one_s) /
                 static_cast<double>(euler_phi(b));
    }

    // Truncated a-sum; mu and R_1 from the smallest-prime-factor sieve.
    Complex a_sum = 0.0;
    for (std::uint64_t a = 1; a <= a_max; ++a) {
        if (std::gcd(a, MNg) != 1) continue;
        std::uint64_t x = a;
        int mu_a = 1;
        Complex r1 = 1.0;
        bool squarefree = true;
        while (x > 1) {
            std::uint64_t p = spf[x];
            int e = 0;
            while (x % p == 0) { x /= p; ++e; }
            if (e > 1) { squarefree = false; break; }
            mu_a = -mu_a;
            double pd = static_cast<double>(p);
            r1 *= 1.0 + 1.0 / (pd * (pd - 1.0)); // reciprocal of R_1's local factor
        }
        if (!squarefree) continue;
        a_sum += static_cast<double>(mu_a) / r1 /
                 (static_cast<double>(a) * static_cast<double>(phi[a]));
    }

    Complex prefactor = zeta(Complex(2.0, 0.0)) * K_s(one_s) * phi_s(MN, one_s) *
                        R_s(MN, one_s);
    Complex lhs = prefactor * a_sum * b_sum;
    Complex rhs = phi_s(MNg, one_s);

    IdentityReport rep;
    rep.name = "mobiusphi";
    rep.residual = std::abs(lhs - rhs);
    rep.truncation_bound = std::abs(prefactor * b_sum) * kPhiHarmonic /
                           static_cast<double>(a_max);
    rep.tolerance = 3.0 * rep.truncation_bound;
    rep.pass = rep.residual <= rep.tolerance;
    rep.detail = "M=" + std::to_string(M) + " N=" + std::to_string(N) +
                 " g=" + std::to_string(g) + " a_max=" + std::to_string(a_max) +
                 " lhs=" + fmt(lhs) + " rhs=" + fmt(rhs);
    return rep;
}

// ---------------------------------------------------------------------------
// Coprime divisor-sum generating identity.
// ---------------------------------------------------------------------------

IdentityReport verify_coprime_divisor_sum(const ShiftSet& A, const ShiftSet& B,
                                          std::uint64_t q, std::uint64_t n_max,
                                          std::uint64_t euler_P) {
    if (A.size() != B.size())
        throw std::invalid_argument("divisor-sum identity: shift sets must have equal size");
    double min_re = 1e9;
    for (const Complex& c : A.values()) min_re = std::min(min_re, c.real());
    for (const Complex& c : B.values()) min_re = std::min(min_re, c.real());
    if (min_re <= 0.0)
        throw std::domain_error(
            "divisor-sum identity: requires shifts with positive real parts");
    if (q == 0 || n_max < 1000)
        throw std::invalid_argument("divisor-sum identity: bad q or n_max");

    std::vector<std::uint32_t> spf = spf_sieve(n_max);
    std::unordered_map<std::uint64_t, std::pair<Complex, Complex>> memo;
    memo.reserve(1 << 16);

    Complex acc = 0.0;
    double last_half = 0.0; // sum of |terms| over the top half, for the tail fit
    const std::uint64_t half = n_max / 2;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        if (q != 1 && std::gcd(n, q) != 1) continue;
        Complex sa = 1.0, sb = 1.0;
        std::uint64_t x = n;
        while (x > 1) {
            std::uint64_t p = spf[x];
            int e = 0;
            while (x % p == 0) { x /= p; ++e; }
            std::uint64_t key = p * 64 + static_cast<std::uint64_t>(e);
            auto it = memo.find(key);
            if (it == memo.end()) {
                double pd = static_cast<double>(p);
                it = memo.emplace(key, std::make_pair(sigma_prime_power(A, pd, e),
                                                      sigma_prime_power(B, pd, e)))
                         .first;
            }
            sa *= it->second.first;
            sb *= it->second.second;
        }
        Complex term = sa * sb / static_cast<double>(n);
        acc += term;
        if (n > half) last_half += std::abs(term);
    }

    // Dyadic-block tail fit: block sums shrink by ~2^(-2 min_re), so the tail
    // beyond n_max is last_half * ratio/(1 - ratio).
    double ratio = std::pow(2.0, -2.0 * min_re);
    double tail_n = ratio < 1.0 ? last_half * ratio / (1.0 - ratio) : 1e9;

    EulerProductValue az = euler_AZ(A, B, euler_P, PrecisionContext::standard());
    Complex rhs = az.value.to_complex() / B_q(q, A, B);

    IdentityReport rep;
    rep.name = "divisorsum";
    rep.residual = std::abs(acc - rhs);
    rep.truncation_bound = tail_n + az.tail_bound * std::abs(rhs);
    rep.tolerance = 3.0 * rep.truncation_bound;
    rep.pass = rep.residual <= rep.tolerance;
    rep.detail = "q=" + std::to_string(q) + " n_max=" + std::to_string(n_max) +
                 " direct=" + fmt(acc) + " euler=" + fmt(rhs) +
                 " tail(n)=" + fmt(tail_n) + " tail(euler)=" + fmt(az.tail_bound);
    return rep;
}

// ---------------------------------------------------------------------------
// Orthogonality of even primitive characters.
// ---------------------------------------------------------------------------

IdentityReport verify_orthogonality(std::uint64_t q, std::uint64_t m, std::uint64_t n,
                                    double tol) {
    if (q == 0 || m == 0 || n == 0)
        throw std::invalid_argument("orthogonality: arguments must be positive");
    if (std::gcd(m, q) != 1 || std::gcd(n, q) != 1)
        throw std::invalid_argument("orthogonality: m and n must be coprime to q");

    Complex lhs = 0.0;
    std::size_t counted = 0;
    for (const DirichletCharacter& chi : character_group(q)) {
        if (!chi.is_even() || !chi.is_primitive()) continue;
        lhs += chi.eval(m) * std::conj(chi.eval(n));
        ++counted;
    }

    // (1/2) sum_{d r = q} mu(d) phi(r) #{signs: r | m -+ n}.
    double rhs = 0.0;
    for (std::uint64_t r : divisors(q)) {
        int mu_d = mobius(q / r);
        if (mu_d == 0) continue;
        std::int64_t diff = static_cast<std::int64_t>(m) - static_cast<std::int64_t>(n);
        std::int64_t sum = static_cast<std::int64_t>(m) + static_cast<std::int64_t>(n);
        int signs = 0;
        if (diff % static_cast<std::int64_t>(r) == 0) ++signs;
        if (sum % static_cast<std::int64_t>(r) == 0) ++signs;
        rhs += 0.5 * mu_d * static_cast<double>(euler_phi(r)) * signs;
    }

    IdentityReport rep;
    rep.name = "orthogonality";
    rep.tolerance = tol;
    rep.residual = std::abs(lhs - Complex(rhs, 0.0));
    rep.pass = rep.residual < tol;
    rep.detail = "q=" + std::to_string(q) + " m=" + std::to_string(m) +
                 " n=" + std::to_string(n) + " enumerated=" + fmt(lhs) +
                 " closed=" + fmt(rhs) + " characters=" + std::to_string(counted);
    return rep;
}

} // namespace momentforge
