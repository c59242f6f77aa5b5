#include "momentforge/predictor.hpp"

#include <cmath>
#include <stdexcept>

#include "momentforge/special.hpp"
#include "gauss_legendre.hpp"

namespace momentforge {

namespace {

ShiftSet translated(const ShiftSet& s, double t) {
    if (t == 0.0) return s;
    std::vector<Complex> v = s.values();
    for (Complex& c : v) c += Complex(0.0, t);
    return ShiftSet(std::move(v));
}

void check_poles(const ShiftSet& x, const ShiftSet& y) {
    for (const Complex& a : x.values())
        for (const Complex& b : y.values())
            if (std::abs(a + b) < 1e-13)
                throw std::domain_error("degenerate shifts; use Q_total or perturb");
}

// Staggered shift ladder alpha_j = j*d*u with u = 1 for the first set and
// u = 1.0001 for the second, so no shift value or pair sum collides.
ShiftSet staggered(int K, double d, double u) {
    std::vector<Complex> v;
    for (int j = 1; j <= K; ++j) v.emplace_back(j * d * u, 0.0);
    return ShiftSet(std::move(v));
}

} // namespace

Complex delta(const ShiftSet& a, const ShiftSet& b) {
    Complex s = 0.0;
    for (const Complex& c : a.values()) s += c;
    for (const Complex& c : b.values()) s += c;
    return 0.5 * s;
}

Complex G_factor(const ShiftSet& a, const ShiftSet& b) {
    Complex g = 1.0;
    for (const Complex& c : a.values()) g *= gamma((0.5 + c) / 2.0);
    for (const Complex& c : b.values()) g *= gamma((0.5 + c) / 2.0);
    return g;
}

BigComplex G_factor_big(const ShiftSet& a, const ShiftSet& b, const PrecisionContext& ctx) {
    BigComplex g(BigFloat(1.0, ctx.bits()), BigFloat(0.0, ctx.bits()));
    for (const Complex& c : a.values())
        g = g * gamma(BigComplex((0.5 + c) / 2.0, ctx.bits()), ctx);
    for (const Complex& c : b.values())
        g = g * gamma(BigComplex((0.5 + c) / 2.0, ctx.bits()), ctx);
    return g;
}

std::vector<SwapTerm> swap_terms(const ShiftSet& a, const ShiftSet& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("swap_terms: shift sets must have equal size");
    const unsigned K = static_cast<unsigned>(a.size());
    if (K > 16) throw std::invalid_argument("swap_terms: set size too large");
    std::vector<SwapTerm> out;
    const unsigned full = (1u << K) - 1u;
    for (unsigned s = 0; s <= full; ++s) {
        for (unsigned t = 0; t <= full; ++t) {
            if (__builtin_popcount(s) != __builtin_popcount(t)) continue;
            std::vector<Complex> x, y;
            for (unsigned j = 0; j < K; ++j)
                if (!(s >> j & 1u)) x.push_back(a[j]);
            for (unsigned k = 0; k < K; ++k)
                if (t >> k & 1u) x.push_back(-b[k]);
            for (unsigned k = 0; k < K; ++k)
                if (!(t >> k & 1u)) y.push_back(b[k]);
            for (unsigned j = 0; j < K; ++j)
                if (s >> j & 1u) y.push_back(-a[j]);
            out.push_back(SwapTerm{s, t, ShiftSet(std::move(x)), ShiftSet(std::move(y))});
        }
    }
    return out;
}

BigComplex Q_single_big(const ShiftSet& x, const ShiftSet& y, std::uint64_t q, double t,
                        const PrecisionContext& ctx, std::uint64_t euler_P) {
    if (q < 3) throw std::invalid_argument("Q_single: q must be at least 3");
    check_poles(x, y);
    const long bits = ctx.bits();
    BigFloat qpi = BigFloat(static_cast<long>(q), bits) / BigFloat::pi(bits);
    BigComplex prefactor = pow(qpi, BigComplex(delta(x, y), bits));
    BigComplex g = G_factor_big(translated(x, t), translated(y, -t), ctx);
    EulerProductValue az = euler_AZ(x, y, euler_P, ctx);
    BigComplex bq = B_q_big(q, x, y, ctx);
    return prefactor * g * az.value / bq;
}

Complex Q_single(const ShiftSet& x, const ShiftSet& y, std::uint64_t q, double t,
                 const PrecisionContext& ctx, std::uint64_t euler_P) {
    return Q_single_big(x, y, q, t, ctx, euler_P).to_complex();
}

SwapSum::SwapSum(const ShiftSet& a, const ShiftSet& b, const PrecisionContext& ctx,
                 std::uint64_t euler_P)
    : ctx_(ctx) {
    for (SwapTerm& term : swap_terms(a, b)) {
        check_poles(term.x, term.y);
        Complex half_sum = delta(term.x, term.y);
        BigComplex az = euler_AZ(term.x, term.y, euler_P, ctx).value;
        data_.push_back(TermData{std::move(term), half_sum, std::move(az)});
    }
}

BigComplex SwapSum::value_big(std::uint64_t q, double t) {
    if (q < 3) throw std::invalid_argument("SwapSum: q must be at least 3");
    auto it = bq_cache_.find(q);
    if (it == bq_cache_.end()) {
        std::vector<BigComplex> blocks;
        blocks.reserve(data_.size());
        for (const TermData& d : data_)
            blocks.push_back(B_q_big(q, d.term.x, d.term.y, ctx_));
        it = bq_cache_.emplace(q, std::move(blocks)).first;
    }
    const long bits = ctx_.bits();
    BigFloat qpi = BigFloat(static_cast<long>(q), bits) / BigFloat::pi(bits);
    BigComplex acc(bits);
    for (std::size_t i = 0; i < data_.size(); ++i) {
        const TermData& d = data_[i];
        BigComplex prefactor = pow(qpi, BigComplex(d.half_sum, bits));
        BigComplex g = G_factor_big(translated(d.term.x, t), translated(d.term.y, -t), ctx_);
        acc += prefactor * g * d.az / it->second[i];
    }
    return acc;
}

Complex SwapSum::value(std::uint64_t q, double t) { return value_big(q, t).to_complex(); }

BigComplex Q_total_big(const ShiftSet& a, const ShiftSet& b, std::uint64_t q, double t,
                       const PrecisionContext& ctx, std::uint64_t euler_P) {
    SwapSum sum(a, b, ctx, euler_P);
    return sum.value_big(q, t);
}

Complex Q_total(const ShiftSet& a, const ShiftSet& b, std::uint64_t q, double t,
                const PrecisionContext& ctx, std::uint64_t euler_P) {
    return Q_total_big(a, b, q, t, ctx, euler_P).to_complex();
}

ZeroShiftPredictor::ZeroShiftPredictor(int K, double t, const PrecisionContext& ctx,
                                       std::uint64_t euler_P, double delta0)
    : ctx_(ctx), t_(t), g_norm_(ctx.bits()) {
    if (ctx.digits < 60)
        throw std::invalid_argument("zero-shift limit requires at least 60 digits");
    if (K < 1 || K > 3)
        throw std::invalid_argument("zero-shift limit supports K in {1, 2, 3}");
    if (!(delta0 > 0.0) || delta0 > 0.01)
        throw std::invalid_argument("zero-shift limit: delta must be in (0, 0.01]");
    for (int level = 0; level < 3; ++level) {
        double d = delta0 / static_cast<double>(1 << level);
        levels_.emplace_back(staggered(K, d, 1.0), staggered(K, d, 1.0001), ctx, euler_P);
    }
    BigComplex quarter_gamma = gamma(BigComplex(0.25, 0.0, ctx.bits()), ctx);
    g_norm_ = BigComplex(1.0, 0.0, ctx.bits());
    for (int i = 0; i < 2 * K; ++i) g_norm_ = g_norm_ * quarter_gamma;
}

double ZeroShiftPredictor::predict(std::uint64_t q) {
    Complex f[3];
    for (int level = 0; level < 3; ++level)
        f[level] = (levels_[level].value_big(q, t_) / g_norm_).to_complex();
    Complex r1 = (4.0 * f[1] - f[0]) / 3.0;
    Complex r2 = (4.0 * f[2] - f[1]) / 3.0;
    if (std::abs(r1 - r2) > 1e-6 * std::abs(r2))
        throw std::runtime_error("cancellation exceeds precision budget");
    Complex result = (16.0 * r2 - r1) / 15.0;
    if (std::abs(result.imag()) >
        std::pow(10.0, -ctx_.digits / 3.0) * std::abs(result.real()))
        throw std::runtime_error("cancellation exceeds precision budget");
    return result.real();
}

double Q_zero_shift(std::uint64_t q, int K, double t, const PrecisionContext& ctx,
                    std::uint64_t euler_P, double delta0) {
    ZeroShiftPredictor predictor(K, t, ctx, euler_P, delta0);
    return predictor.predict(q);
}

EulerConstant a3(std::uint64_t P) {
    if (P < 1000) throw std::invalid_argument("a3: cutoff must be at least 1000");
    auto primes = primes_up_to(P);
    double log_acc = 0.0;
    double last = 0.0, last_p = 2.0;
    for (std::uint64_t p : *primes) {
        double x = 1.0 / static_cast<double>(p);
        double f = 4.0 * std::log1p(-x) + std::log1p(x * (4.0 + x));
        log_acc += f;
        last = std::abs(f);
        last_p = static_cast<double>(p);
    }
    EulerConstant out;
    out.value = std::exp(log_acc);
    double c = last * last_p * last_p;
    out.tail_bound = c / (static_cast<double>(P) * std::log(static_cast<double>(P)));
    return out;
}

EulerConstant a3L(std::uint64_t P, const PrecisionContext&) {
    if (P < 1000) throw std::invalid_argument("a3L: cutoff must be at least 1000");
    auto primes = primes_up_to(P);
    double log_acc = 0.0;
    double last = 0.0, last_p = 2.0;
    for (std::uint64_t p : *primes) {
        double x = 1.0 / static_cast<double>(p);
        double poly = 1.0 +
                      x * (5.0 +
                           x * (-5.0 +
                                x * (14.0 +
                                     x * (-15.0 +
                                          x * (5.0 + x * (4.0 + x * (-4.0 + x)))))));
        double f = 5.0 * std::log1p(-x) + std::log(poly);
        log_acc += f;
        last = std::abs(f);
        last_p = static_cast<double>(p);
    }
    EulerConstant out;
    out.value = std::exp(log_acc);
    double c = last * last_p * last_p;
    out.tail_bound = c / (static_cast<double>(P) * std::log(static_cast<double>(P)));
    return out;
}

double leading_asymptotic(std::uint64_t q) {
    if (q < 3) throw std::invalid_argument("leading_asymptotic: q must be at least 3");
    static const double a3_value = a3(100000).value;
    double local = 1.0;
    for (const auto& [p, e] : factorize(q).factors) {
        (void)e;
        double x = 1.0 / static_cast<double>(p);
        double num = std::pow(1.0 - x, 5.0);
        local *= num / (1.0 + x * (4.0 + x));
    }
    double lq = std::log(static_cast<double>(q));
    double log9 = std::pow(lq, 9.0);
    return 42.0 * a3_value * local * log9 / 362880.0;
}

MomentPolynomial p3_paper() {
    MomentPolynomial p;
    p.c = {0.9165,  6.5939,  10.2743, 8.6073,    3.9843,
           1.0459,  0.1484,  0.01107, 0.0004050, 0.000005708};
    return p;
}

namespace {

template <class F>
double adaptive_gl(const detail::GaussLegendreRule& rule, const F& f,
                   double a, double b, double whole, double tol, int depth) {
    double mid = 0.5 * (a + b);
    double left = rule.integrate(f, a, mid);
    double right = rule.integrate(f, mid, b);
    double diff = left + right - whole;
    if (std::abs(diff) <= tol || depth >= 40) return left + right;
    return adaptive_gl(rule, f, a, mid, left, 0.5 * tol, depth + 1) +
           adaptive_gl(rule, f, mid, b, right, 0.5 * tol, depth + 1);
}

} // namespace

double p3_integral(double T) {
    if (!(T > 0.0)) throw std::invalid_argument("p3_integral: T must be positive");
    static const MomentPolynomial p3 = p3_paper();
    static const detail::GaussLegendreRule rule(15);
    const double log_2pi = std::log(2.0 * M_PI);
    // Substitute t = e^u; the lower limit carries a relative contribution
    // below e^-80 and is dropped.
    const double u_hi = std::log(T);
    const double u_lo = u_hi - 80.0;
    auto f = [&](double u) { return std::exp(u) * p3(u - log_2pi); };
    // Seed panels of width <= 4 so the first adaptive estimate is sane.
    int n0 = static_cast<int>((u_hi - u_lo) / 4.0) + 1;
    double h = (u_hi - u_lo) / n0;
    double rough = 0.0;
    for (int i = 0; i < n0; ++i)
        rough += rule.integrate(f, u_lo + i * h, u_lo + (i + 1) * h);
    double tol = 1e-12 * std::abs(rough) / n0 + 1e-300;
    double acc = 0.0;
    for (int i = 0; i < n0; ++i) {
        double a = u_lo + i * h, b = u_lo + (i + 1) * h;
        acc += adaptive_gl(rule, f, a, b, rule.integrate(f, a, b), tol, 0);
    }
    return acc;
}

} // namespace momentforge
