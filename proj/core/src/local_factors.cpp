#include "momentforge/local_factors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "momentforge/parallel.hpp"
#include "momentforge/special.hpp"

namespace momentforge {

namespace {

// p^e for double-lane work.
inline Complex p_pow(double p, Complex e) { return std::exp(e * std::log(p)); }

// exp(w * lp) for real lp = log p, avoiding a fresh mpfr_log per power.
BigComplex pexp(const BigFloat& lp, const BigComplex& w) {
    BigFloat m = exp(w.re * lp);
    BigFloat ph = w.im * lp;
    return {m * cos(ph), m * sin(ph)};
}

BigComplex big_one(long bits) { return BigComplex(1.0, 0.0, bits); }

// sigma_shifted(A, p^e) for e = 0..e_max as complete homogeneous symmetric
// polynomials in the gammas: dividing the generating series by (1 - gamma X)
// once per gamma is the in-place ascending recurrence below.
std::vector<BigComplex> sigma_row_big(const std::vector<BigComplex>& gammas, int e_max,
                                      long bits) {
    std::vector<BigComplex> h(static_cast<std::size_t>(e_max) + 1, BigComplex(bits));
    h[0] = big_one(bits);
    for (const BigComplex& g : gammas) {
        for (int m = 1; m <= e_max; ++m) h[m] += g * h[m - 1];
    }
    return h;
}

// Shared per-prime data: u_j = p^(-alpha_j), v_k = p^(-beta_k).
struct LocalPowers {
    std::vector<BigComplex> u, v;
    BigFloat inv_p;
    long bits;
};

LocalPowers local_powers(std::uint64_t p, const ShiftSet& A, const ShiftSet& B, long bits) {
    LocalPowers lp;
    lp.bits = bits;
    BigFloat pf(static_cast<double>(p), bits);
    BigFloat logp = log(pf);
    lp.inv_p = BigFloat(1.0, bits) / pf;
    lp.u.reserve(A.size());
    lp.v.reserve(B.size());
    for (const Complex& a : A.values()) lp.u.push_back(pexp(logp, BigComplex(-a, bits)));
    for (const Complex& b : B.values()) lp.v.push_back(pexp(logp, BigComplex(-b, bits)));
    return lp;
}

// prod_{j,k} (1 - u_j v_k / p) = Z_p(A,B)^(-1).
BigComplex z_p_inverse_from(const LocalPowers& lp) {
    BigComplex prod = big_one(lp.bits);
    for (const BigComplex& uj : lp.u) {
        BigComplex uj_over_p = uj * lp.inv_p;
        for (const BigComplex& vk : lp.v) prod *= big_one(lp.bits) - uj_over_p * vk;
    }
    return prod;
}

// B_p as a series in g; `eps` is the absolute-ish stop target (relative to
// max(1, |accumulated|)).  Convergence needs sum of the two largest real
// parts < 1, which the ShiftSet bound |Re| <= 0.45 guarantees.
BigComplex b_p_from(const LocalPowers& lp, double p, double decay, int digits) {
    const double eps = std::pow(10.0, -(digits + 3));
    int e_max =
        static_cast<int>((digits + 12) * std::log(10.0) / (decay * std::log(p))) +
        8 * static_cast<int>(lp.u.size()) + 60;
    for (;;) {
        std::vector<BigComplex> ra = sigma_row_big(lp.u, e_max, lp.bits);
        std::vector<BigComplex> rb = sigma_row_big(lp.v, e_max, lp.bits);
        BigComplex acc(lp.bits);
        BigFloat pg(1.0, lp.bits);
        int consecutive = 0;
        bool converged = false;
        for (int g = 0; g <= e_max; ++g) {
            BigComplex term = ra[static_cast<std::size_t>(g)] *
                              rb[static_cast<std::size_t>(g)] * pg;
            acc += term;
            pg *= lp.inv_p;
            double scale = std::max(1.0, abs(acc).to_double());
            if (abs(term).to_double() < eps * scale) {
                if (++consecutive >= 50) {
                    converged = true;
                    break;
                }
            } else {
                consecutive = 0;
            }
        }
        if (converged) return acc;
        if (e_max > 20000)
            throw std::runtime_error("B_p: local series did not converge (shifts too large)");
        e_max = e_max * 3 / 2 + 64;
    }
}

double row_decay(const ShiftSet& A, const ShiftSet& B) {
    double d = 1.0 - (A.max_abs_real() + B.max_abs_real());
    if (d <= 0.05) d = 0.05;
    return d;
}

void check_sizes(const ShiftSet& A, const ShiftSet& B, const char* who) {
    if (A.size() != B.size())
        throw std::invalid_argument(std::string(who) + ": shift sets must have equal size");
}

// Largest Re(alpha + beta) over pairs: controls the Euler-product tail
// exponent p^(-(2 - s_max)).
double max_pair_real(const ShiftSet& A, const ShiftSet& B) {
    double ma = -1e9, mb = -1e9;
    for (const Complex& a : A.values()) ma = std::max(ma, a.real());
    for (const Complex& b : B.values()) mb = std::max(mb, b.real());
    return ma + mb;
}

} // namespace

// ---------------------------------------------------------------------------
// Double lane.
// ---------------------------------------------------------------------------

Complex zeta_p(double p, Complex x) {
    if (!(p >= 2.0)) throw std::invalid_argument("zeta_p: p must be at least 2");
    Complex den = 1.0 - p_pow(p, -x);
    if (std::abs(den) < 1e-14) throw std::domain_error("zeta_p: pole (p^(-x) = 1)");
    return 1.0 / den;
}

Complex Z_p(double p, const ShiftSet& A, const ShiftSet& B) {
    check_sizes(A, B, "Z_p");
    Complex prod = 1.0;
    for (const Complex& a : A.values()) {
        Complex u_over_p = p_pow(p, -a) / p;
        for (const Complex& b : B.values()) {
            Complex den = 1.0 - u_over_p * p_pow(p, -b);
            if (std::abs(den) < 1e-14) throw std::domain_error("Z_p: pole (p^(-x) = 1)");
            prod *= den;
        }
    }
    return 1.0 / prod;
}

Complex B_p(double p, const ShiftSet& A, const ShiftSet& B) {
    check_sizes(A, B, "B_p");
    if (!(p >= 2.0)) throw std::invalid_argument("B_p: p must be at least 2");
    const double eps = 1e-18;
    int e_max = 96;
    for (;;) {
        std::vector<Complex> ra = sigma_prime_power_row(A, p, e_max);
        std::vector<Complex> rb = sigma_prime_power_row(B, p, e_max);
        Complex acc = 0.0;
        double pg = 1.0;
        int consecutive = 0;
        for (int g = 0; g <= e_max; ++g) {
            Complex term = ra[static_cast<std::size_t>(g)] *
                           rb[static_cast<std::size_t>(g)] * pg;
            acc += term;
            pg /= p;
            double scale = std::max(1.0, std::abs(acc));
            if (std::abs(term) < eps * scale) {
                if (++consecutive >= 50) return acc;
            } else {
                consecutive = 0;
            }
        }
        if (e_max > 20000)
            throw std::runtime_error("B_p: local series did not converge (shifts too large)");
        e_max *= 2;
    }
}

Complex B_q(std::uint64_t q, const ShiftSet& A, const ShiftSet& B) {
    check_sizes(A, B, "B_q");
    Complex prod = 1.0;
    for (const auto& [p, e] : factorize(q).factors)
        prod *= B_p(static_cast<double>(p), A, B);
    return prod;
}

// ---------------------------------------------------------------------------
// Extended-precision lane.
// ---------------------------------------------------------------------------

BigComplex zeta_p_big(std::uint64_t p, const BigComplex& x, const PrecisionContext& ctx) {
    if (p < 2) throw std::invalid_argument("zeta_p: p must be at least 2");
    const long bits = ctx.bits();
    BigFloat pf(static_cast<double>(p), bits);
    BigComplex den = big_one(bits) - pexp(log(pf), -x);
    if (abs(den).to_double() < 1e-25) throw std::domain_error("zeta_p: pole (p^(-x) = 1)");
    return big_one(bits) / den;
}

BigComplex Z_p_big(std::uint64_t p, const ShiftSet& A, const ShiftSet& B,
                   const PrecisionContext& ctx) {
    check_sizes(A, B, "Z_p");
    LocalPowers lp = local_powers(p, A, B, ctx.bits());
    return big_one(lp.bits) / z_p_inverse_from(lp);
}

BigComplex B_p_big(std::uint64_t p, const ShiftSet& A, const ShiftSet& B,
                   const PrecisionContext& ctx) {
    check_sizes(A, B, "B_p");
    if (p < 2) throw std::invalid_argument("B_p: p must be at least 2");
    LocalPowers lp = local_powers(p, A, B, ctx.bits());
    return b_p_from(lp, static_cast<double>(p), row_decay(A, B), ctx.digits);
}

BigComplex B_q_big(std::uint64_t q, const ShiftSet& A, const ShiftSet& B,
                   const PrecisionContext& ctx) {
    check_sizes(A, B, "B_q");
    BigComplex prod = big_one(ctx.bits());
    for (const auto& [p, e] : factorize(q).factors) prod *= B_p_big(p, A, B, ctx);
    return prod;
}

// ---------------------------------------------------------------------------
// Euler products.
// ---------------------------------------------------------------------------

namespace {

// One local factor of the A-product: B_p * Z_p^(-1).
BigComplex a_local_factor(std::uint64_t p, const ShiftSet& A, const ShiftSet& B,
                          double decay, int digits, long bits) {
    LocalPowers lp = local_powers(p, A, B, bits);
    return b_p_from(lp, static_cast<double>(p), decay, digits) * z_p_inverse_from(lp);
}

} // namespace

EulerProductValue euler_A(const ShiftSet& A, const ShiftSet& B, std::uint64_t P,
                          const PrecisionContext& ctx) {
    check_sizes(A, B, "euler_A");
    if (P < 2) throw std::invalid_argument("euler_A: prime cutoff must be at least 2");
    const double s_max = max_pair_real(A, B);
    if (s_max >= 0.95)
        throw std::invalid_argument("euler_A: shift real parts too large for convergence");

    auto table = primes_up_to(P);
    std::vector<std::uint64_t> plist;
    for (std::uint32_t p : *table) {
        if (p > P) break;
        plist.push_back(p);
    }

    const long bits = ctx.bits();
    const int digits = ctx.digits;
    const double decay = row_decay(A, B);

    // Fixed block partition with an ordered reduction: the value is
    // bit-identical for every thread count.
    const std::size_t nblocks = std::min<std::size_t>(plist.size(), 128);
    std::vector<BigComplex> partial = parallel_map<BigComplex>(
        nblocks, [&](std::size_t blk) {
            std::size_t lo = blk * plist.size() / nblocks;
            std::size_t hi = (blk + 1) * plist.size() / nblocks;
            BigComplex prod = big_one(bits);
            for (std::size_t i = lo; i < hi; ++i)
                prod *= a_local_factor(plist[i], A, B, decay, digits, bits);
            return prod;
        });
    BigComplex value = big_one(bits);
    for (const BigComplex& blockv : partial) value *= blockv;

    // Tail of log(product) beyond P: the local factor is 1 + O(p^(-(2-s_max))),
    // with the constant calibrated from the last computed factors;
    // sum_{p > P} c p^(-(2-s_max)) ~ c * P^(-(1-s_max)) / ((1-s_max) log P).
    double c_est = 0.0;
    std::size_t probes = std::min<std::size_t>(plist.size(), 2);
    for (std::size_t i = plist.size() - probes; i < plist.size(); ++i) {
        std::uint64_t p = plist[i];
        BigComplex f = a_local_factor(p, A, B, decay, digits, bits);
        double lf = abs(log(f)).to_double();
        c_est = std::max(c_est, lf * std::pow(static_cast<double>(p), 2.0 - s_max));
    }
    double Pd = static_cast<double>(plist.empty() ? P : plist.back());
    double tail =
        c_est * std::pow(Pd, -(1.0 - s_max)) / ((1.0 - s_max) * std::log(Pd));

    EulerProductValue out;
    out.value = value;
    out.cutoff = plist.empty() ? 0 : plist.back();
    out.tail_bound = tail;
    return out;
}

EulerProductValue euler_AZ(const ShiftSet& A, const ShiftSet& B, std::uint64_t P,
                           const PrecisionContext& ctx) {
    EulerProductValue out = euler_A(A, B, P, ctx);
    const long bits = ctx.bits();
    BigComplex zfac = big_one(bits);
    for (const Complex& a : A.values()) {
        for (const Complex& b : B.values()) {
            BigComplex s = BigComplex(1.0, 0.0, bits) + BigComplex(a + b, bits);
            zfac *= zeta(s, ctx);
        }
    }
    out.value *= zfac;
    return out;
}

// ---------------------------------------------------------------------------
// Auxiliary arithmetic factors.
// ---------------------------------------------------------------------------

Complex R_s(std::uint64_t m, Complex s) {
    if (m == 0) throw std::invalid_argument("R_s: m must be positive");
    Complex prod = 1.0;
    for (const auto& [p, e] : factorize(m).factors) {
        double pd = static_cast<double>(p);
        prod *= 1.0 + p_pow(pd, -s) / (pd - 1.0);
    }
    return 1.0 / prod;
}

Complex K_s(Complex s, std::uint64_t P) {
    auto table = primes_up_to(P);
    Complex prod = 1.0;
    for (std::uint32_t p : *table) {
        if (p > P) break;
        double pd = static_cast<double>(p);
        Complex ps = p_pow(pd, -s);
        prod *= (1.0 + ps / (pd - 1.0)) * (1.0 - ps / pd);
    }
    return prod;
}

Complex phi_s(std::uint64_t m, Complex s) {
    if (m == 0) throw std::invalid_argument("phi_s: m must be positive");
    Complex prod = 1.0;
    for (const auto& [p, e] : factorize(m).factors)
        prod *= 1.0 - p_pow(static_cast<double>(p), -s);
    return prod;
}

Complex E_factor(std::uint64_t m, std::uint64_t a, Complex s) {
    if (m == 0 || a == 0) throw std::invalid_argument("E_factor: arguments must be positive");
    if (std::gcd(m, a) != 1)
        throw std::invalid_argument("E_factor: a and m must be coprime");
    return phi_s(m, s) * R_s(a, s) * R_s(m, s);
}

// ---------------------------------------------------------------------------
// Sieved Moebius sums.
// ---------------------------------------------------------------------------

namespace {

// Local a-sum factor 1 - R_z(p)/(p(p-1)).
Complex a_local(double p, Complex z) {
    Complex rz = 1.0 / (1.0 + p_pow(p, -z) / (p - 1.0));
    return 1.0 - rz / (p * (p - 1.0));
}

void require_pairwise_coprime(std::uint64_t M, std::uint64_t N, std::uint64_t g,
                              const char* who) {
    if (M == 0 || N == 0 || g == 0)
        throw std::invalid_argument(std::string(who) + ": arguments must be positive");
    if (std::gcd(M, N) != 1 || std::gcd(M, g) != 1 || std::gcd(N, g) != 1)
        throw std::invalid_argument(std::string(who) + ": M, N, g must be pairwise coprime");
}

} // namespace

Complex mobius_a_product(Complex z, std::uint64_t P) {
    // prod_p (1 - R_z(p)/(p(p-1))), accelerated by zeta(2): the ratio of the
    // local factor to (1 - p^(-2)) is 1 + O(p^(-3)), so the truncated ratio
    // product converges to ~1e-10 by the default cutoff.
    auto table = primes_up_to(P);
    Complex prod = 1.0;
    for (std::uint32_t p : *table) {
        if (p > P) break;
        double pd = static_cast<double>(p);
        prod *= a_local(pd, z) / (1.0 - 1.0 / (pd * pd));
    }
    const double zeta2 = M_PI * M_PI / 6.0;
    return prod / zeta2;
}

Complex f_inner(std::uint64_t M, std::uint64_t N, std::uint64_t g, Complex z,
                std::uint64_t P) {
    require_pairwise_coprime(M, N, g, "f_inner");
    const std::uint64_t MN = M * N;

    // a-sum over (a, gMN) = 1: divide the sieved primes back out of the
    // complete product.
    Complex a_sum = mobius_a_product(z, P);
    for (const auto& [p, e] : factorize(g * MN).factors)
        a_sum /= a_local(static_cast<double>(p), z);

    // b-sum over b | g, (b, MN) = 1; pairwise coprimality makes the second
    // condition automatic.
    Complex b_sum = 1.0;
    for (const auto& [p, e] : factorize(g).factors) {
        double pd = static_cast<double>(p);
        Complex rz = 1.0 / (1.0 + p_pow(pd, -z) / (pd - 1.0));
        b_sum *= 1.0 - rz / (pd - 1.0);
    }

    return phi_s(MN, z) * R_s(MN, z) * a_sum * b_sum;
}

Complex f_dab(std::uint64_t M, std::uint64_t N, std::uint64_t g, Complex z,
              std::uint64_t P) {
    require_pairwise_coprime(M, N, g, "f_dab");
    const std::uint64_t MN = M * N;

    // d-sum over (d, gMN) = 1 of mu(d) d^(z-2) = (1/zeta(2-z)) * local
    // corrections; it vanishes at z = 1 (the reciprocal of the zeta pole).
    Complex d_sum;
    if (std::abs(z - Complex(1.0, 0.0)) < 1e-12) {
        d_sum = 0.0;
    } else {
        d_sum = 1.0 / zeta(2.0 - z);
        for (const auto& [p, e] : factorize(g * MN).factors)
            d_sum /= 1.0 - p_pow(static_cast<double>(p), z - 2.0);
    }
    return d_sum * f_inner(M, N, g, z, P);
}

// ---------------------------------------------------------------------------
// Swap-direction local series.
// ---------------------------------------------------------------------------

namespace {

// Shared engine for B_m / B_n and their printed-variant readings:
//   sum_{m,g >= 0} sigma(X, p^(g+m)) sigma(Y, p^g) p^(-g-m) * p^(shift * e)
// with e = m (exponent_on_outer) or e = g.
Complex swap_series(double p, const ShiftSet& X, const ShiftSet& Y, Complex shift,
                    bool exponent_on_outer) {
    const double eps = 1e-18;
    int L = 48;
    for (;;) {
        std::vector<Complex> rx = sigma_prime_power_row(X, p, 2 * L);
        std::vector<Complex> ry = sigma_prime_power_row(Y, p, L);
        Complex acc = 0.0;
        double edge = 0.0;
        Complex pm_shift = p_pow(p, shift - 1.0); // ratio in m (adopted reading)
        Complex pg_shift = p_pow(p, shift) / p;   // ratio in g (printed reading)
        Complex pm = 1.0;
        for (int m = 0; m <= L; ++m) {
            Complex pg = 1.0;
            Complex inner = 0.0;
            for (int g = 0; g <= L; ++g) {
                Complex term = rx[static_cast<std::size_t>(g + m)] *
                               ry[static_cast<std::size_t>(g)] * pg;
                inner += term;
                if (g == L || m == L) edge += std::abs(term * pm);
                pg *= exponent_on_outer ? Complex(1.0 / p) : pg_shift;
            }
            acc += inner * pm;
            pm *= exponent_on_outer ? pm_shift : Complex(1.0 / p);
        }
        if (edge < eps * std::max(1.0, std::abs(acc))) return acc;
        if (L > 4096)
            throw std::runtime_error("B_m: local series did not converge (shifts too large)");
        L *= 2;
    }
}

struct SigmaPieces {
    Complex r, phi_z, w, c, z;
};

SigmaPieces sigma_pieces(double p, Complex alpha_p, Complex beta_p) {
    SigmaPieces sp;
    sp.z = alpha_p + beta_p;
    Complex pz = p_pow(p, -sp.z);
    sp.r = 1.0 / (1.0 + pz / (p - 1.0));
    sp.phi_z = 1.0 - pz;
    sp.w = p_pow(p, sp.z - 2.0);
    sp.c = sp.r / (p * (p - 1.0));
    return sp;
}

} // namespace

Complex B_m(double p, const ShiftSet& A, const ShiftSet& B, Complex alpha_p) {
    check_sizes(A, B, "B_m");
    return swap_series(p, A, B, alpha_p, /*exponent_on_outer=*/true);
}

Complex B_n(double p, const ShiftSet& A, const ShiftSet& B, Complex beta_p) {
    check_sizes(A, B, "B_n");
    return swap_series(p, B, A, beta_p, /*exponent_on_outer=*/true);
}

Complex B_m_literal(double p, const ShiftSet& A, const ShiftSet& B, Complex alpha_p) {
    check_sizes(A, B, "B_m");
    return swap_series(p, A, B, alpha_p, /*exponent_on_outer=*/false);
}

Complex B_n_literal(double p, const ShiftSet& A, const ShiftSet& B, Complex beta_p) {
    check_sizes(A, B, "B_n");
    return swap_series(p, B, A, beta_p, /*exponent_on_outer=*/false);
}

Complex Sigma_p_direct(double p, const ShiftSet& A, const ShiftSet& B,
                       Complex alpha_p, Complex beta_p) {
    check_sizes(A, B, "Sigma_p");
    SigmaPieces sp = sigma_pieces(p, alpha_p, beta_p);
    const Complex f_origin = (1.0 - sp.w) * (1.0 - sp.c);
    const Complex f_diag = 1.0 - sp.r / (p - 1.0);
    const Complex f_wing = sp.r * sp.phi_z;

    const double eps = 1e-18;
    int L = 48;
    for (;;) {
        std::vector<Complex> ra = sigma_prime_power_row(A, p, 2 * L);
        std::vector<Complex> rb = sigma_prime_power_row(B, p, 2 * L);
        Complex acc = 0.0;
        double edge = 0.0;

        // M = N = 0 line.
        {
            double pg = 1.0;
            for (int g = 0; g <= L; ++g) {
                Complex term = ra[static_cast<std::size_t>(g)] *
                               rb[static_cast<std::size_t>(g)] * pg *
                               (g == 0 ? f_origin : f_diag);
                acc += term;
                if (g == L) edge += std::abs(term);
                pg /= p;
            }
        }
        // M >= 1, N = 0 wing and its mirror.
        Complex ratio_m = p_pow(p, alpha_p - 1.0);
        Complex ratio_n = p_pow(p, beta_p - 1.0);
        Complex pm = ratio_m, pn = ratio_n;
        for (int outer = 1; outer <= L; ++outer) {
            double pg = 1.0;
            Complex inner_m = 0.0, inner_n = 0.0;
            for (int g = 0; g <= L; ++g) {
                Complex tm = ra[static_cast<std::size_t>(g + outer)] *
                             rb[static_cast<std::size_t>(g)] * pg;
                Complex tn = ra[static_cast<std::size_t>(g)] *
                             rb[static_cast<std::size_t>(g + outer)] * pg;
                inner_m += tm;
                inner_n += tn;
                if (g == L || outer == L)
                    edge += std::abs(tm * pm) + std::abs(tn * pn);
                pg /= p;
            }
            acc += f_wing * (inner_m * pm + inner_n * pn);
            pm *= ratio_m;
            pn *= ratio_n;
        }

        if (edge < eps * std::max(1.0, std::abs(acc))) return acc;
        if (L > 4096)
            throw std::runtime_error(
                "Sigma_p: local series did not converge (shifts too large)");
        L *= 2;
    }
}

namespace {

Complex sigma_p_combination_impl(double p, const ShiftSet& A, const ShiftSet& B,
                                 Complex alpha_p, Complex beta_p, bool adopted) {
    SigmaPieces sp = sigma_pieces(p, alpha_p, beta_p);
    Complex b = B_p(p, A, B);
    Complex bm = adopted ? B_m(p, A, B, alpha_p) : B_m_literal(p, A, B, alpha_p);
    Complex bn = adopted ? B_n(p, A, B, beta_p) : B_n_literal(p, A, B, beta_p);
    return sp.r * sp.phi_z * (bm + bn - 2.0 * b) + b - sp.r * (b - 1.0) / (p - 1.0) -
           sp.w - sp.c + sp.c * sp.w;
}

} // namespace

Complex Sigma_p_combination(double p, const ShiftSet& A, const ShiftSet& B,
                            Complex alpha_p, Complex beta_p) {
    check_sizes(A, B, "Sigma_p");
    return sigma_p_combination_impl(p, A, B, alpha_p, beta_p, /*adopted=*/true);
}

Complex Sigma_p_combination_literal(double p, const ShiftSet& A, const ShiftSet& B,
                                    Complex alpha_p, Complex beta_p) {
    check_sizes(A, B, "Sigma_p");
    return sigma_p_combination_impl(p, A, B, alpha_p, beta_p, /*adopted=*/false);
}

} // namespace momentforge
