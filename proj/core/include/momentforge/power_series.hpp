#pragma once

#include <cstddef>
#include <vector>

#include "momentforge/arith.hpp"

namespace momentforge {

// ---------------------------------------------------------------------------
// Truncated formal power series over Complex, exact through a fixed order N
// (coefficients c_0..c_N).  Arithmetic truncates to the smaller operand
// order; division is the causal long-division recurrence and requires the
// divisor's constant term to be nonzero, so that (C*D)/D == C holds
// coefficient-for-coefficient through the shared order.
// ---------------------------------------------------------------------------
class PowerSeries {
  public:
    PowerSeries() : coeff_(1, Complex(0.0)) {}
    explicit PowerSeries(std::size_t order) : coeff_(order + 1, Complex(0.0)) {}
    explicit PowerSeries(std::vector<Complex> coefficients);

    static PowerSeries one(std::size_t order);
    // Low-degree coefficients padded with zeros up to `order` (truncated if
    // more are given): the way polynomial factors like (1 - gamma X) enter
    // series arithmetic without shrinking the working order.
    static PowerSeries polynomial(const std::vector<Complex>& low, std::size_t order);

    std::size_t order() const { return coeff_.size() - 1; }
    const std::vector<Complex>& coefficients() const { return coeff_; }
    // Coefficient of X^n; zero beyond the truncation order.
    Complex operator[](std::size_t n) const {
        return n < coeff_.size() ? coeff_[n] : Complex(0.0);
    }
    void set(std::size_t n, Complex v);

    PowerSeries scaled(Complex s) const;

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
    // Truncated division; throws std::domain_error if b[0] == 0.
    friend PowerSeries operator/(const PowerSeries& a, const PowerSeries& b);

    // max_n |a_n - b_n| over the shared order.
    friend double max_abs_diff(const PowerSeries& a, const PowerSeries& b);

  private:
    std::vector<Complex> coeff_;
};

// prod_j (1 - gamma_j X)^(-1) through order N: coefficients are the complete
// homogeneous symmetric functions of the parameters, built by sequential
// convolution with each geometric factor.
PowerSeries series_from_params(const std::vector<Complex>& params, std::size_t N);

// Coefficient-wise (Hadamard) product E(X) = sum c_n d_n (X0 X)^n; the
// optional X0 rescales the variable (X0 = 1 gives the plain convolution
// diagonal).
PowerSeries hadamard_E(const PowerSeries& C, const PowerSeries& D,
                       Complex X0 = Complex(1.0, 0.0));

// E_c(X) = sum_{g,m} c_{g+m} d_g X^{g+m} / gamma1^m: coefficient n equals
// c_n * prefix_n with prefix_n = d_n + prefix_{n-1}/gamma1.  Throws on
// gamma1 = 0.  E_d is the mirror image (roles of C and D swapped, delta1 in
// place of gamma1).
PowerSeries E_c(const PowerSeries& C, const PowerSeries& D, Complex gamma1,
                std::size_t N);
PowerSeries E_d(const PowerSeries& C, const PowerSeries& D, Complex delta1,
                std::size_t N);

} // namespace momentforge
