#pragma once

#include <complex>
#include <vector>

#include "momentforge/bigfloat.hpp"
#include "momentforge/precision.hpp"

namespace momentforge {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Gamma function (Spouge's approximation).
//
// Spouge's series is used at every precision because its depth is a simple
// function of the target digit count: with parameter a, the relative error is
// below a^(-1/2) (2*pi)^(-a-1/2), so a ~ 1.26 * digits suffices.  Arguments
// with Re z < 1/2 go through the reflection formula.  Relative error is within
// 10^(3-digits) on the tested strip |Im z| <= 100.
// ---------------------------------------------------------------------------
BigComplex gamma(const BigComplex& z, const PrecisionContext& ctx);
BigComplex log_gamma(const BigComplex& z, const PrecisionContext& ctx);

// Double-precision lane (Spouge a = 16), relative error ~ 1e-14.
Complex gamma(Complex z);
Complex log_gamma(Complex z);

// ---------------------------------------------------------------------------
// Riemann zeta off the critical line.
//
// Euler-Maclaurin with adaptive depth; near s = 1 a Laurent expansion in
// Stieltjes constants is used whenever its truncation error meets the
// advertised bound at the requested precision (the series carries 13
// constants, so at very high precision the code falls back to
// Euler-Maclaurin, which handles the neighbourhood of the pole exactly).
// Relative error within 10^(4-digits).  Throws std::domain_error at s = 1.
// ---------------------------------------------------------------------------
BigComplex zeta(const BigComplex& s, const PrecisionContext& ctx);
Complex zeta(Complex s, const PrecisionContext& ctx = PrecisionContext::standard());

// Stieltjes constants gamma_0 .. gamma_12 rounded to prec_bits (stored at 80
// significant digits; see tools/stieltjes_gen.cpp for the generator).
const std::vector<BigFloat>& stieltjes_table(long prec_bits);

namespace detail {
// From-scratch Stieltjes computation (Cauchy circle over Euler-Maclaurin
// zeta); the generator behind the frozen table and the oracle used to audit
// it in the tests.
std::vector<BigFloat> compute_stieltjes(int count, int digits, int nodes, double radius);
} // namespace detail

// ---------------------------------------------------------------------------
// zeta on the critical line: zeta(1/2 + it) for t >= 0.
//
// Riemann-Siegel main sum with the first two shape-function corrections for
// large t, Euler-Maclaurin below the crossover (the asymptotic corrections
// cannot reach 1e-8 at small t, so the crossover sits where the proven
// remainder bound crosses that target).  Absolute error <= 1e-8 for
// 0 <= t <= 1e7.
// ---------------------------------------------------------------------------
Complex zeta_critical(double t);
double zeta_critical_abs(double t);

// Hardy's real rotation Z(t) = e^{i theta(t)} zeta(1/2+it); zeros of zeta on
// the critical line are its sign changes.
double hardy_z(double t);

// Riemann-Siegel theta function (asymptotic series; abs err < 2e-10 for
// t >= 20, and ~1/t^5 beyond — only consumed at large t internally).
double riemann_siegel_theta(double t);

namespace detail {
// The two evaluation lanes behind zeta_critical, exposed so tests can compare
// them against each other across the crossover.
Complex zeta_critical_em(double t);   // Euler-Maclaurin lane
Complex zeta_critical_rs(double t);   // Riemann-Siegel lane (t large)
// Shape-function corrections C0(p)..C3(p) of the Riemann-Siegel expansion.
void rs_corrections(double p, double c[4]);
} // namespace detail

// ---------------------------------------------------------------------------
// Upper incomplete gamma Gamma(a, x) for complex a (Re a > -1/2 away from
// poles), real x >= 0; power series below the a-dependent crossover, Lentz
// continued fraction above.  Relative error <= 1e-13.
// ---------------------------------------------------------------------------
Complex incomplete_gamma_upper(Complex a, double x);
// Normalized Q(a, x) = Gamma(a, x) / Gamma(a); underflows cleanly to 0.
Complex incomplete_gamma_ratio(Complex a, double x);

// ---------------------------------------------------------------------------
// Mellin weight kernels.  For 0 < Re w < Re z < 1:
//
//   h_minus(w,z) = Gamma(w)Gamma(1-z)/Gamma(1+w-z) + Gamma(z-w)Gamma(1-z)/Gamma(1-w)
//   h_plus(w,z)  = Gamma(z-w)Gamma(w)/Gamma(z)
//   h_total      = h_minus + h_plus
//
// and h_total collapses to the closed form
//
//   2^z sin(pi z/2) Gamma(1-z) Gamma(w/2) Gamma((z-w)/2)
//       / ( Gamma((1-w)/2) Gamma((1-z+w)/2) )
//
// (Young's identity), returned by young_rhs.  Outside the domain the kernels
// throw std::domain_error("H kernel domain").
// ---------------------------------------------------------------------------
Complex h_minus(Complex w, Complex z);
Complex h_plus(Complex w, Complex z);
Complex h_total(Complex w, Complex z);
Complex young_rhs(Complex w, Complex z);

} // namespace momentforge
