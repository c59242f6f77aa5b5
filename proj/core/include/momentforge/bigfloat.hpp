#pragma once

#include <mpfr.h>

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "momentforge/precision.hpp"

namespace momentforge {

// RAII wrapper over an mpfr_t.  Every value carries its own precision;
// binary operations allocate the result at the larger operand precision, so
// precision is inherited from the seeds a computation starts from (typically
// PrecisionContext::bits()).  This avoids any dependence on MPFR's global
// default precision, which would be fragile under multithreading.
class BigFloat {
  public:
    BigFloat() { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); }
    explicit BigFloat(long prec_bits) { mpfr_init2(v_, prec_bits); mpfr_set_zero(v_, 1); }
    BigFloat(double x, long prec_bits) { mpfr_init2(v_, prec_bits); mpfr_set_d(v_, x, MPFR_RNDN); }
    BigFloat(long x, long prec_bits) { mpfr_init2(v_, prec_bits); mpfr_set_si(v_, x, MPFR_RNDN); }
    BigFloat(const std::string& s, long prec_bits) {
        mpfr_init2(v_, prec_bits);
        mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN);
    }

    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, 64);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    long precision() const { return mpfr_get_prec(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
    std::string to_string(int digits) const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_negative() const { return mpfr_sgn(v_) < 0; }
    int sign() const { return mpfr_sgn(v_); }

    static BigFloat pi(long prec_bits) {
        BigFloat r(prec_bits);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat euler_gamma(long prec_bits) {
        BigFloat r(prec_bits);
        mpfr_const_euler(r.v_, MPFR_RNDN);
        return r;
    }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r(out_prec(a, b));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r(out_prec(a, b));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r(out_prec(a, b));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        BigFloat r(out_prec(a, b));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    BigFloat operator-() const {
        BigFloat r(precision());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator/=(const BigFloat& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

    friend BigFloat abs(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat sqrt(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat exp(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_exp(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat log(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_log(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat sin(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_sin(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat cos(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_cos(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat sinh(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_sinh(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat cosh(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_cosh(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat atan2(const BigFloat& y, const BigFloat& x) {
        BigFloat r(out_prec(y, x));
        mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat pow(const BigFloat& a, const BigFloat& b) {
        BigFloat r(out_prec(a, b));
        mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat pow_si(const BigFloat& a, long n) {
        BigFloat r(a.precision());
        mpfr_pow_si(r.v_, a.v_, n, MPFR_RNDN);
        return r;
    }
    friend BigFloat hypot(const BigFloat& a, const BigFloat& b) {
        BigFloat r(out_prec(a, b));
        mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

  private:
    static long out_prec(const BigFloat& a, const BigFloat& b) {
        long pa = mpfr_get_prec(a.v_), pb = mpfr_get_prec(b.v_);
        return pa > pb ? pa : pb;
    }
    mpfr_t v_;
};

// Complex number with BigFloat components.  Only the operations the library
// needs are provided; everything reduces to real MPFR calls.
class BigComplex {
  public:
    BigFloat re, im;

    BigComplex() = default;
    explicit BigComplex(long prec_bits) : re(prec_bits), im(prec_bits) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    BigComplex(double r, double i, long prec_bits) : re(r, prec_bits), im(i, prec_bits) {}
    BigComplex(std::complex<double> z, long prec_bits)
        : re(z.real(), prec_bits), im(z.imag(), prec_bits) {}

    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
    long precision() const { return re.precision() > im.precision() ? re.precision() : im.precision(); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigComplex operator*(const BigFloat& a, const BigComplex& b) {
        return {a * b.re, a * b.im};
    }
    friend BigComplex operator*(const BigComplex& a, const BigFloat& b) { return b * a; }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        BigFloat d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend BigComplex operator/(const BigComplex& a, const BigFloat& b) {
        return {a.re / b, a.im / b};
    }
    BigComplex operator-() const { return {-re, -im}; }
    BigComplex& operator+=(const BigComplex& o) { re += o.re; im += o.im; return *this; }
    BigComplex& operator-=(const BigComplex& o) { re -= o.re; im -= o.im; return *this; }
    BigComplex& operator*=(const BigComplex& o) { *this = *this * o; return *this; }

    BigComplex conj() const { return {re, -im}; }

    friend BigFloat abs(const BigComplex& z) { return hypot(z.re, z.im); }

    friend BigComplex exp(const BigComplex& z) {
        BigFloat m = exp(z.re);
        return {m * cos(z.im), m * sin(z.im)};
    }
    friend BigComplex log(const BigComplex& z) {
        return {log(abs(z)), atan2(z.im, z.re)};
    }
    // Principal-branch power z^w = exp(w log z).
    friend BigComplex pow(const BigComplex& z, const BigComplex& w) {
        return exp(w * log(z));
    }
    friend BigComplex pow(const BigFloat& x, const BigComplex& w) {
        // x > 0 expected: exp(w * log x) without an atan2 call.
        BigFloat lx = log(x);
        BigFloat m = exp(w.re * lx);
        BigFloat ph = w.im * lx;
        return {m * cos(ph), m * sin(ph)};
    }
    friend BigComplex sin(const BigComplex& z) {
        return {sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im)};
    }
    friend BigComplex sqrt(const BigComplex& z) {
        // exp(log(z)/2); adequate away from the branch cut, which is all we use.
        BigFloat half(0.5, z.precision());
        return exp(BigComplex{log(abs(z)) * half, atan2(z.im, z.re) * half});
    }
};

// Exact Bernoulli numbers B_0, B_2, ..., B_{2n} rounded to `prec_bits`.
// Computed once per (count, precision) from the exact rational recurrence, so
// there is no cancellation-driven precision loss.
const std::vector<BigFloat>& bernoulli_even_table(int count, long prec_bits);

} // namespace momentforge
