#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "momentforge/arith.hpp"
#include "momentforge/bigfloat.hpp"
#include "momentforge/local_factors.hpp"
#include "momentforge/precision.hpp"

namespace momentforge {

// ---------------------------------------------------------------------------
// The conjectural main term for the shifted 2K-th moment of even primitive
// Dirichlet L-functions: swap-term enumeration, the single-term value
// Q(X, Y; q), the full swap sum, its confluent zero-shift limit, and the
// leading-order asymptotic with its arithmetic constants.
// ---------------------------------------------------------------------------

// One summand of the swap sum: the index subsets S of A and T of B (as
// bitmasks, bit j = element j), with |S| = |T|, and the resulting shifted
// sets X = (A\S) u (-T), Y = (B\T) u (-S).
struct SwapTerm {
    unsigned s_mask;
    unsigned t_mask;
    ShiftSet x;
    ShiftSet y;
};

// Half-sum of all shifts: delta_{A,B} = (sum A + sum B)/2.  Invariant under
// the joint translation (A + it, B - it).
Complex delta(const ShiftSet& a, const ShiftSet& b);

// Product of the archimedean factors Gamma((1/2 + shift)/2) over both sets.
Complex G_factor(const ShiftSet& a, const ShiftSet& b);
BigComplex G_factor_big(const ShiftSet& a, const ShiftSet& b, const PrecisionContext& ctx);

// All C(2K, K) swap terms in deterministic lexicographic order: S-mask major,
// T-mask minor, filtered to |S| = |T|.  First term is (S,T) = (empty, empty)
// giving (X,Y) = (A,B); last is (full, full) giving (-B, -A).
std::vector<SwapTerm> swap_terms(const ShiftSet& a, const ShiftSet& b);

// Q(X_{it}, Y_{-it}; q) = (q/pi)^delta * G_{X_it, Y_-it} * (A Z / B_q)(X, Y).
// The Euler-product block and B_q are evaluated at the untranslated sets
// (they are invariant under the joint translation); only the Gamma block and
// the exponent see t.  Throws std::domain_error "degenerate shifts; use
// Q_total or perturb" when some x + y vanishes (zeta pole), and
// std::invalid_argument for q < 3.
BigComplex Q_single_big(const ShiftSet& x, const ShiftSet& y, std::uint64_t q, double t,
                        const PrecisionContext& ctx, std::uint64_t euler_P = 100000);
Complex Q_single(const ShiftSet& x, const ShiftSet& y, std::uint64_t q, double t = 0.0,
                 const PrecisionContext& ctx = PrecisionContext::extended(),
                 std::uint64_t euler_P = 100000);

// Reusable swap sum over a fixed shift pair (A, B): the per-term Euler
// products are computed once at construction, and B_q blocks are cached per
// modulus, so evaluating across many (q, t) pairs costs only Gamma factors.
class SwapSum {
public:
    SwapSum(const ShiftSet& a, const ShiftSet& b, const PrecisionContext& ctx,
            std::uint64_t euler_P = 100000);

    BigComplex value_big(std::uint64_t q, double t = 0.0);
    Complex value(std::uint64_t q, double t = 0.0);

private:
    struct TermData {
        SwapTerm term;
        Complex half_sum;  // delta_{X,Y}
        BigComplex az;     // Euler-product block at (X, Y)
    };
    std::vector<TermData> data_;
    PrecisionContext ctx_;
    std::unordered_map<std::uint64_t, std::vector<BigComplex>> bq_cache_;
};

// Sum of Q_single over all swap terms, in deterministic term order.  Finite
// even though individual terms are huge at nearly-coincident shifts: the
// cancellation is carried in extended precision.
BigComplex Q_total_big(const ShiftSet& a, const ShiftSet& b, std::uint64_t q, double t,
                       const PrecisionContext& ctx, std::uint64_t euler_P = 100000);
Complex Q_total(const ShiftSet& a, const ShiftSet& b, std::uint64_t q, double t = 0.0,
                const PrecisionContext& ctx = PrecisionContext::extended(),
                std::uint64_t euler_P = 100000);

// Confluent limit of the swap sum at zero shifts, normalized by the
// zero-shift Gamma block: the predicted mean of |L(1/2 + it, chi)|^{2K} over
// even primitive characters mod q.  Evaluated at staggered shifts
// alpha_j = j*d, beta_k = k*d*1.0001 on three levels d, d/2, d/4 and
// Richardson-extrapolated in d^2.  Requires ctx.digits >= 60 (each swap term
// blows up like d^{-K^2}).  Throws std::runtime_error "cancellation exceeds
// precision budget" when the two extrapolation stages disagree beyond 1e-6
// relative or the imaginary residue is out of budget.
double Q_zero_shift(std::uint64_t q, int K = 3, double t = 0.0,
                    const PrecisionContext& ctx = PrecisionContext::extended(),
                    std::uint64_t euler_P = 200000, double delta0 = 1e-3);

// The same confluent limit packaged for sweeps over many moduli: the three
// staggered-level swap sums are built once, then predict(q) costs only the
// per-q blocks.
class ZeroShiftPredictor {
public:
    explicit ZeroShiftPredictor(int K = 3, double t = 0.0,
                                const PrecisionContext& ctx = PrecisionContext::extended(),
                                std::uint64_t euler_P = 200000, double delta0 = 1e-3);
    double predict(std::uint64_t q);

private:
    std::vector<SwapSum> levels_;
    PrecisionContext ctx_;
    double t_;
    BigComplex g_norm_;  // Gamma(1/4)^{2K}
};

// A truncated Euler product together with its tail bound.
struct EulerConstant {
    double value = 0.0;
    double tail_bound = 0.0;
};

// a3 = prod_p (1 - 1/p)^4 (1 + 4/p + 1/p^2): the arithmetic factor of the
// sixth-moment leading term for the character family.
EulerConstant a3(std::uint64_t P = 100000);

// The analogous constant for the t-aspect sixth moment:
// prod_p (1-1/p)^5 (1 + 5/p - 5/p^2 + 14/p^3 - 15/p^4 + 5/p^5 + 4/p^6
//                     - 4/p^7 + 1/p^8).
EulerConstant a3L(std::uint64_t P = 100000,
                  const PrecisionContext& ctx = PrecisionContext::standard());

// Leading-order prediction 42 a3 prod_{p|q} [(1-1/p)^5 / (1+4/p+1/p^2)]
// log^9(q) / 9! for the mean of |L(1/2,chi)|^6 over even primitive chi mod q.
double leading_asymptotic(std::uint64_t q);

// Degree-9 polynomial with real coefficients, P(x) = sum c_k x^k.
struct MomentPolynomial {
    std::array<double, 10> c{};
    double operator()(double x) const {
        double v = 0.0;
        for (int k = 9; k >= 0; --k) v = v * x + c[k];
        return v;
    }
};

// The published approximate coefficients of the sixth-moment polynomial P3.
MomentPolynomial p3_paper();

// integral_0^T P3(log(t / 2 pi)) dt by adaptive Gauss-Legendre quadrature on
// the substituted integrand (t = e^u), relative error <= 1e-9.
double p3_integral(double T);

} // namespace momentforge
