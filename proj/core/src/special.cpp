#include "momentforge/special.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace momentforge {

namespace {

// ===========================================================================
// Spouge gamma, double lane.
// ===========================================================================

constexpr int kSpougeADouble = 16;

const std::array<double, kSpougeADouble>& spouge_coeffs_double() {
    static const std::array<double, kSpougeADouble> table = [] {
        std::array<double, kSpougeADouble> c{};
        const double a = kSpougeADouble;
        c[0] = std::sqrt(2.0 * M_PI);
        double fact = 1.0; // (k-1)!
        for (int k = 1; k < kSpougeADouble; ++k) {
            if (k > 1) fact *= (k - 1);
            double ak = a - k;
            c[k] = ((k % 2) ? 1.0 : -1.0) * std::pow(ak, k - 0.5) * std::exp(ak) / fact;
        }
        return c;
    }();
    return table;
}

Complex spouge_right_half(Complex z) {
    // Requires Re z >= 1/2.  Computes Gamma(z) = (w+a)^(w+1/2) e^-(w+a) S(w),
    // w = z - 1, S the Spouge partial-fraction sum.
    const auto& c = spouge_coeffs_double();
    const double a = kSpougeADouble;
    Complex w = z - 1.0;
    Complex s = c[0];
    for (int k = 1; k < kSpougeADouble; ++k) s += c[k] / (w + static_cast<double>(k));
    return std::pow(w + a, w + 0.5) * std::exp(-(w + a)) * s;
}

Complex log_spouge_right_half(Complex z) {
    const auto& c = spouge_coeffs_double();
    const double a = kSpougeADouble;
    Complex w = z - 1.0;
    Complex s = c[0];
    for (int k = 1; k < kSpougeADouble; ++k) s += c[k] / (w + static_cast<double>(k));
    return (w + 0.5) * std::log(w + a) - (w + a) + std::log(s);
}

// ===========================================================================
// Spouge gamma, arbitrary precision.
// ===========================================================================

struct SpougeTable {
    int a = 0;
    long bits = 0;
    std::vector<BigFloat> c;
};

const SpougeTable& spouge_table_big(const PrecisionContext& ctx) {
    static std::mutex mu;
    static std::map<long, SpougeTable> cache;
    long bits = ctx.bits();
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(bits);
    if (it != cache.end()) return it->second;

    SpougeTable t;
    t.a = static_cast<int>(std::ceil(1.2629 * (ctx.digits + 10))) + 2;
    t.bits = bits + 64; // guard bits for coefficient construction
    const long wb = t.bits;
    BigFloat two_pi = BigFloat(2L, wb) * BigFloat::pi(wb);
    t.c.push_back(sqrt(two_pi));
    BigFloat fact(1L, wb);
    for (int k = 1; k < t.a; ++k) {
        if (k > 1) fact *= BigFloat(static_cast<long>(k - 1), wb);
        BigFloat ak(static_cast<long>(t.a - k), wb);
        BigFloat term = pow(ak, BigFloat(k - 0.5, wb)) * exp(ak) / fact;
        if (k % 2 == 0) term = -term;
        t.c.push_back(term);
    }
    return cache.emplace(bits, std::move(t)).first->second;
}

BigComplex spouge_right_half_big(const BigComplex& z, const SpougeTable& t) {
    const long wb = t.bits;
    BigComplex w = z - BigComplex(1.0, 0.0, wb);
    BigComplex s{t.c[0], BigFloat(0L, wb)};
    for (int k = 1; k < t.a; ++k) {
        BigComplex den = w + BigComplex(static_cast<double>(k), 0.0, wb);
        s += BigComplex{t.c[k], BigFloat(0L, wb)} / den;
    }
    BigComplex wa = w + BigComplex(static_cast<double>(t.a), 0.0, wb);
    BigComplex half(0.5, 0.0, wb);
    return pow(wa, w + half) * exp(-wa) * s;
}

// ===========================================================================
// Euler-Maclaurin zeta, arbitrary precision.
//
//   zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
//             + sum_{j=1}^{J} B_2j/(2j)! * (s)_{2j-1} * N^(-s-2j+1) + R
//
//   |R| <= |B_{2J+2}/(2J+2)! * (s)_{2J+1} * N^(-Re s-2J-1)| * |(s+2J+1)/(Re s+2J+1)|
// ===========================================================================

BigComplex zeta_euler_maclaurin(const BigComplex& s, const PrecisionContext& ctx) {
    const long wb = ctx.bits() + 32;
    const double sigma = s.re.to_double();
    const double timag = std::abs(s.im.to_double());

    int J = std::max(16, static_cast<int>(std::ceil(0.7 * ctx.digits)));
    long N = std::max<long>({J, 20, static_cast<long>(std::ceil((timag + 8.0) * 0.5))});

    for (int attempt = 0; attempt < 8; ++attempt) {
        // Cheap double-precision remainder estimate to pick N and J before
        // paying for the multiprecision pass.
        double log_poch = 0.0;
        for (int m = 0; m <= 2 * J; ++m)
            log_poch += 0.5 * std::log((sigma + m) * (sigma + m) + timag * timag);
        // log |B_{2J+2}/(2J+2)!| ~ log(2) - (2J+2) log(2 pi)
        double log_b = std::log(2.0) - (2 * J + 2) * std::log(2.0 * M_PI);
        double log_rem = log_b + log_poch - (sigma + 2 * J + 1) * std::log(static_cast<double>(N));
        double target = -(ctx.digits + 6) * std::log(10.0);
        if (log_rem < target) break;
        N *= 2;
        if (attempt >= 3) J += J / 2;
    }

    const auto& bern = bernoulli_even_table(J + 2, wb);

    BigComplex sum(wb);
    for (long n = 1; n < N; ++n) {
        BigFloat nb(static_cast<long>(n), wb);
        sum += pow(nb, -BigComplex{s.re, s.im});
    }
    BigFloat Nb(static_cast<long>(N), wb);
    BigComplex one(1.0, 0.0, wb);
    BigComplex Npow_1ms = pow(Nb, one - s); // N^(1-s)
    sum += Npow_1ms / (s - one);
    BigComplex Npow_ms = pow(Nb, -BigComplex{s.re, s.im}); // N^-s
    sum += Npow_ms * BigComplex(0.5, 0.0, wb);

    // Correction terms: B_2j/(2j)! * (s)_{2j-1} * N^(-s-2j+1).
    BigComplex poch = BigComplex{s.re, s.im}; // (s)_1 = s
    BigFloat fact(2L, wb);                    // (2j)!
    BigFloat Ninv2 = BigFloat(1L, wb) / (Nb * Nb);
    BigComplex Nfac = Npow_ms * Nb; // N^(-s+1); each term below multiplies by N^-2
    for (int j = 1; j <= J; ++j) {
        Nfac = Nfac * Ninv2; // N^(-s-2j+1)
        if (j > 1) {
            // advance (s)_{2j-3} -> (s)_{2j-1}: multiply (s+2j-3)(s+2j-2)
            poch = poch * (s + BigComplex(2.0 * j - 3.0, 0.0, wb)) *
                   (s + BigComplex(2.0 * j - 2.0, 0.0, wb));
            fact *= BigFloat(static_cast<long>(2 * j - 1), wb);
            fact *= BigFloat(static_cast<long>(2 * j), wb);
        }
        sum += (bern[j] / fact) * poch * Nfac;
    }
    return sum;
}

// Laurent expansion around s = 1 with 13 Stieltjes constants:
//   zeta(1+w) = 1/w + sum_{n=0}^{12} (-1)^n gamma_n w^n / n!
// Used only when the n = 13 tail meets the precision contract.
bool laurent_applicable(const BigComplex& w, const PrecisionContext& ctx) {
    double aw = std::hypot(w.re.to_double(), w.im.to_double());
    if (aw > 0.1 || aw == 0.0) return false;
    // Tail bound 0.05 |w|^13 / 13!  relative to |zeta| >= 1/(2|w|) near the pole.
    double log_tail = std::log(0.05) + 13.0 * std::log(aw) - std::log(6227020800.0) +
                      std::log(2.0 * aw);
    return log_tail < -(ctx.digits + 4) * std::log(10.0);
}

BigComplex zeta_laurent(const BigComplex& w, const PrecisionContext& ctx) {
    const long wb = ctx.bits() + 16;
    const auto& g = stieltjes_table(wb);
    BigComplex one(1.0, 0.0, wb);
    BigComplex res = one / w;
    BigComplex wpow = one;
    BigFloat fact(1L, wb);
    for (int n = 0; n <= 12; ++n) {
        if (n > 0) {
            wpow = wpow * w;
            fact *= BigFloat(static_cast<long>(n), wb);
        }
        BigComplex term = wpow * (g[n] / fact);
        if (n % 2) term = -term;
        res += term;
    }
    return res;
}

} // namespace

// ===========================================================================
// Public gamma / zeta
// ===========================================================================

Complex gamma(Complex z) {
    if (z.real() < 0.5) {
        // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
        return M_PI / (std::sin(M_PI * z) * spouge_right_half(1.0 - z));
    }
    return spouge_right_half(z);
}

Complex log_gamma(Complex z) {
    if (z.real() < 0.5)
        return std::log(M_PI) - std::log(std::sin(M_PI * z)) - log_spouge_right_half(1.0 - z);
    return log_spouge_right_half(z);
}

BigComplex gamma(const BigComplex& z, const PrecisionContext& ctx) {
    const auto& t = spouge_table_big(ctx);
    const long wb = t.bits;
    BigComplex zw{BigFloat(z.re), BigFloat(z.im)};
    if (z.re.to_double() < 0.5) {
        BigFloat pi = BigFloat::pi(wb);
        BigComplex pz{pi * z.re, pi * z.im};
        BigComplex one(1.0, 0.0, wb);
        return BigComplex{pi, BigFloat(0L, wb)} /
               (sin(pz) * spouge_right_half_big(one - zw, t));
    }
    return spouge_right_half_big(zw, t);
}

BigComplex log_gamma(const BigComplex& z, const PrecisionContext& ctx) {
    // Principal value on Re z >= 1/2; reflection (up to 2 pi i ambiguity,
    // which downstream ratios never see) otherwise.
    if (z.re.to_double() >= 0.5) return log(gamma(z, ctx));
    const long wb = ctx.bits();
    BigFloat pi = BigFloat::pi(wb);
    BigComplex one(1.0, 0.0, wb);
    BigComplex zz{BigFloat(z.re), BigFloat(z.im)};
    BigComplex pz{pi * z.re, pi * z.im};
    return BigComplex{log(pi), BigFloat(0L, wb)} - log(sin(pz)) - log(gamma(one - zz, ctx));
}

BigComplex zeta(const BigComplex& s, const PrecisionContext& ctx) {
    const long wb = ctx.bits();
    BigComplex one(1.0, 0.0, wb);
    BigComplex w = s - one;
    if (w.is_zero()) throw std::domain_error("zeta pole at s = 1");
    if (laurent_applicable(w, ctx)) return zeta_laurent(w, ctx);
    return zeta_euler_maclaurin(s, ctx);
}

Complex zeta(Complex s, const PrecisionContext& ctx) {
    PrecisionContext use = ctx.digits > 20 ? ctx : PrecisionContext(20);
    return zeta(BigComplex(s, use.bits()), use).to_complex();
}

// ===========================================================================
// Incomplete gamma
// ===========================================================================

namespace {

// Lower regularized series: P(a,x) = x^a e^-x / Gamma(a) * sum x^k / (a)_{k+1}.
Complex lower_regularized_series(Complex a, double x, Complex log_gamma_a) {
    Complex sum = 1.0 / a;
    Complex term = sum;
    for (int k = 1; k < 500; ++k) {
        term *= x / (a + static_cast<double>(k));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    Complex log_pre = a * std::log(x) - x - log_gamma_a;
    if (log_pre.real() < -740.0) return 0.0;
    return std::exp(log_pre) * sum;
}

// Continued fraction for Q(a,x) (modified Lentz).
Complex upper_regularized_cf(Complex a, double x, Complex log_gamma_a) {
    const double tiny = 1e-300;
    Complex b = x + 1.0 - a;
    Complex c = 1.0 / tiny;
    Complex d = 1.0 / b;
    Complex h = d;
    for (int i = 1; i < 600; ++i) {
        Complex an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        Complex del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    Complex log_pre = a * std::log(x) - x - log_gamma_a;
    if (log_pre.real() < -740.0) return 0.0;
    return std::exp(log_pre) * h;
}

} // namespace

Complex incomplete_gamma_ratio(Complex a, double x) {
    if (x < 0.0) throw std::domain_error("incomplete gamma requires x >= 0");
    if (x == 0.0) return 1.0;
    Complex lg = log_gamma(a);
    if (x < a.real() + 1.0)
        return 1.0 - lower_regularized_series(a, x, lg);
    return upper_regularized_cf(a, x, lg);
}

Complex incomplete_gamma_upper(Complex a, double x) {
    if (x < 0.0) throw std::domain_error("incomplete gamma requires x >= 0");
    if (x == 0.0) return gamma(a);
    return incomplete_gamma_ratio(a, x) * gamma(a);
}

// ===========================================================================
// Mellin weight kernels
// ===========================================================================

namespace {
void check_h_domain(Complex w, Complex z) {
    if (!(0.0 < w.real() && w.real() < z.real() && z.real() < 1.0))
        throw std::domain_error("H kernel domain");
}
} // namespace

Complex h_minus(Complex w, Complex z) {
    check_h_domain(w, z);
    return gamma(w) * gamma(1.0 - z) / gamma(1.0 + w - z) +
           gamma(z - w) * gamma(1.0 - z) / gamma(1.0 - w);
}

Complex h_plus(Complex w, Complex z) {
    check_h_domain(w, z);
    return gamma(z - w) * gamma(w) / gamma(z);
}

Complex h_total(Complex w, Complex z) { return h_minus(w, z) + h_plus(w, z); }

Complex young_rhs(Complex w, Complex z) {
    check_h_domain(w, z);
    return std::pow(2.0, z) * std::sin(M_PI * z / 2.0) * gamma(1.0 - z) * gamma(w / 2.0) *
           gamma((z - w) / 2.0) / (gamma((1.0 - w) / 2.0) * gamma((1.0 - z + w) / 2.0));
}

} // namespace momentforge
