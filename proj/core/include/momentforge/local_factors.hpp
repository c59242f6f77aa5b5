#pragma once

#include <cstdint>
#include <vector>

#include "momentforge/arith.hpp"
#include "momentforge/bigfloat.hpp"
#include "momentforge/precision.hpp"

namespace momentforge {

// ---------------------------------------------------------------------------
// Per-prime local factors.
//
// Throughout, A and B are shift sets of equal size K and the local variables
// are u_j = p^(-alpha_j), v_k = p^(-beta_k).
//
//   zeta_p(x)  = (1 - p^(-x))^(-1)
//   Z_p(A,B)   = prod_{j,k} zeta_p(1 + alpha_j + beta_k)
//   B_p(A,B)   = sum_{g>=0} sigma_shifted(A, p^g) sigma_shifted(B, p^g) p^(-g)
//   B_q(A,B)   = prod over distinct p | q of B_p(A,B)
//
// B_p converges geometrically for |Re alpha + Re beta| < 1; the series is
// truncated adaptively (stop once 50 consecutive terms fall below the target
// epsilon times the running value — the terms are polynomial-times-geometric,
// so a run of small terms certifies the tail).
// ---------------------------------------------------------------------------

Complex zeta_p(double p, Complex x);
Complex Z_p(double p, const ShiftSet& A, const ShiftSet& B);
Complex B_p(double p, const ShiftSet& A, const ShiftSet& B);
Complex B_q(std::uint64_t q, const ShiftSet& A, const ShiftSet& B);

// Extended-precision lane (the swap-term evaluation cancels ~27 digits at
// delta = 1e-3, so every factor entering it is computed on BigComplex).
BigComplex zeta_p_big(std::uint64_t p, const BigComplex& x, const PrecisionContext& ctx);
BigComplex Z_p_big(std::uint64_t p, const ShiftSet& A, const ShiftSet& B, const PrecisionContext& ctx);
BigComplex B_p_big(std::uint64_t p, const ShiftSet& A, const ShiftSet& B, const PrecisionContext& ctx);
BigComplex B_q_big(std::uint64_t q, const ShiftSet& A, const ShiftSet& B, const PrecisionContext& ctx);

// ---------------------------------------------------------------------------
// Euler products.
// ---------------------------------------------------------------------------

struct EulerProductValue {
    BigComplex value;            // product over p <= cutoff
    std::uint64_t cutoff = 0;    // largest prime bound used
    double tail_bound = 0.0;     // estimated |log tail| of the omitted p > cutoff
};

// A(A,B) = prod_p B_p Z_p^(-1).  The local factor is 1 + O(p^(-2+2m)) with
// m = max |Re shift|, so the product converges absolutely for m < 1/2 and the
// tail beyond P is estimated by c * integral_P^inf dx/(x^(2-2m) log x) with c
// calibrated from the last computed local factor.  Deterministic under any
// thread count (fixed block partition, ordered reduction).
EulerProductValue euler_A(const ShiftSet& A, const ShiftSet& B, std::uint64_t P,
                          const PrecisionContext& ctx);

// (A*Z)(A,B) = euler_A * prod_{j,k} zeta(1 + alpha_j + beta_k): the finite
// combination consumed by every swap term.  Requires all pairwise sums
// alpha + beta != 0 (zeta pole).
EulerProductValue euler_AZ(const ShiftSet& A, const ShiftSet& B, std::uint64_t P,
                           const PrecisionContext& ctx);

// ---------------------------------------------------------------------------
// Auxiliary arithmetic factors for the phi-weighted Dirichlet series
//
//   sum_{(h,m)=1} 1/(phi(a h) h^(s-1))
//     = zeta(s) zeta(s+1) K_s(s) E(m,a,s) / phi(a),   gcd(a, m) = 1,
//
// and for the sieved Moebius sums below.
// ---------------------------------------------------------------------------

// R_s(m) = prod_{p|m} (1 + p^(-s)/(p-1))^(-1).
Complex R_s(std::uint64_t m, Complex s);

// K_s(s) = prod_p (1 + p^(-s)/(p-1))(1 - p^(-s-1)); Euler product over
// p <= P (the local factor is 1 + O(p^(-s-1) p^(-1)), absolutely convergent
// for Re s > 0; tail < 1e-9 at the default cutoff for Re s >= 1/2).
Complex K_s(Complex s, std::uint64_t P = 100000);

// phi_s(m, s) = prod_{p|m} (1 - p^(-s)); phi_s(m, 1) = phi(m)/m.
Complex phi_s(std::uint64_t m, Complex s);

// E(m, a, s) = phi_s(m, s) R_s(a) R_s(m); requires gcd(a, m) = 1.
Complex E_factor(std::uint64_t m, std::uint64_t a, Complex s);

// ---------------------------------------------------------------------------
// The sieved Moebius triple sum
//
//   f(M,N,g;z) = phi_s(MN,z) R_z(MN)
//                * sum_{(d,gMN)=1} mu(d) d^(z-2)
//                * sum_{(a,gMN)=1} mu(a) R_z(a)/(a phi(a))
//                * sum_{b|g,(b,MN)=1} mu(b) R_z(b)/phi(b)
//
// for pairwise-coprime M, N, g.  Each Moebius sum is evaluated in closed
// form through its absolutely convergent Euler product (the d-sum equals
// 1/zeta(2-z) times finitely many local corrections, and likewise for the
// a-sum), which reaches the 1e-10 accuracy target that a literal truncated
// sum could not.  f_inner omits the d-sum factor.
// ---------------------------------------------------------------------------

Complex f_dab(std::uint64_t M, std::uint64_t N, std::uint64_t g, Complex z,
              std::uint64_t P = 100000);
Complex f_inner(std::uint64_t M, std::uint64_t N, std::uint64_t g, Complex z,
                std::uint64_t P = 100000);

// The complete Moebius a-sum over all integers, sum_{a>=1} mu(a) R_z(a)/(a phi(a))
// = prod_p (1 - R_z(p)/(p(p-1))), zeta(2)-accelerated.  (Equals
// 1/(zeta(2) K_s(1)) at z = 1.)
Complex mobius_a_product(Complex z, std::uint64_t P = 100000);

// ---------------------------------------------------------------------------
// Swap-direction local series.  With distinguished shifts alpha' in A and
// beta' in B:
//
//   B_m = sum_{g,m>=0} sigma_shifted(A,p^(g+m)) sigma_shifted(B,p^g)
//                      p^(-g-m) p^(alpha' m)
//   B_n = the mirror image with beta' and the inner index on B's side.
//
// B_m_literal carries the shift on g instead of m (the two candidate
// readings differ; the identity checks adjudicate which one participates in
// the proved combination — see Sigma_p below).
// ---------------------------------------------------------------------------

Complex B_m(double p, const ShiftSet& A, const ShiftSet& B, Complex alpha_p);
Complex B_n(double p, const ShiftSet& A, const ShiftSet& B, Complex beta_p);
Complex B_m_literal(double p, const ShiftSet& A, const ShiftSet& B, Complex alpha_p);
Complex B_n_literal(double p, const ShiftSet& A, const ShiftSet& B, Complex beta_p);

// ---------------------------------------------------------------------------
// Sigma_p: the per-prime swap cross-term, two independent routes.
//
// Direct route: the triple sum over (M, N, g) with min(M,N) = 0 of
//   sigma_shifted(A,p^(M+g)) sigma_shifted(B,p^(N+g))
//     * f_p(M,N,g) / p^(M(1-alpha') + N(1-beta') + g)
// where f_p is the p-local Euler factor of f(M,N,g;z) at z = alpha'+beta':
// with r = R_z(p), w = p^(z-2), c = r/(p(p-1)),
//   f_p = (1-w)(1-c)   if M = N = g = 0,
//   f_p = 1 - r/(p-1)  if M = N = 0, g >= 1,
//   f_p = r (1 - p^(-z))  otherwise.
// (The global constants of f cancel against the explicit prefactors of the
// surrounding computation and never enter the per-prime factor.)
//
// Combination route: the closed combination of B, B_m, B_n:
//   Sigma_p = r phi_z (B_m - B) + r phi_z (B_n - B) + B - r (B-1)/(p-1)
//             - w - c + c w,        phi_z = 1 - p^(-z).
//
// The two routes agreeing (and disagreeing for the literal B_m reading) is
// one of the headline identity checks.
// ---------------------------------------------------------------------------

Complex Sigma_p_direct(double p, const ShiftSet& A, const ShiftSet& B,
                       Complex alpha_p, Complex beta_p);
Complex Sigma_p_combination(double p, const ShiftSet& A, const ShiftSet& B,
                            Complex alpha_p, Complex beta_p);
Complex Sigma_p_combination_literal(double p, const ShiftSet& A, const ShiftSet& B,
                                    Complex alpha_p, Complex beta_p);

} // namespace momentforge
