#include "momentforge/power_series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace momentforge {

PowerSeries::PowerSeries(std::vector<Complex> coefficients)
    : coeff_(std::move(coefficients)) {
    if (coeff_.empty()) coeff_.assign(1, Complex(0.0));
}

PowerSeries PowerSeries::one(std::size_t order) {
    PowerSeries s(order);
    s.coeff_[0] = 1.0;
    return s;
}

PowerSeries PowerSeries::polynomial(const std::vector<Complex>& low, std::size_t order) {
    PowerSeries s(order);
    for (std::size_t n = 0; n < low.size() && n <= order; ++n) s.coeff_[n] = low[n];
    return s;
}

void PowerSeries::set(std::size_t n, Complex v) {
    if (n >= coeff_.size())
        throw std::out_of_range("PowerSeries: coefficient index beyond order");
    coeff_[n] = v;
}

PowerSeries PowerSeries::scaled(Complex s) const {
    PowerSeries r = *this;
    for (Complex& c : r.coeff_) c *= s;
    return r;
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    std::size_t n = std::min(a.order(), b.order());
    PowerSeries r(n);
    for (std::size_t i = 0; i <= n; ++i) r.coeff_[i] = a.coeff_[i] + b.coeff_[i];
    return r;
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    std::size_t n = std::min(a.order(), b.order());
    PowerSeries r(n);
    for (std::size_t i = 0; i <= n; ++i) r.coeff_[i] = a.coeff_[i] - b.coeff_[i];
    return r;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    std::size_t n = std::min(a.order(), b.order());
    PowerSeries r(n);
    for (std::size_t i = 0; i <= n; ++i) {
        Complex acc = 0.0;
        for (std::size_t k = 0; k <= i; ++k) acc += a.coeff_[k] * b.coeff_[i - k];
        r.coeff_[i] = acc;
    }
    return r;
}

PowerSeries operator/(const PowerSeries& a, const PowerSeries& b) {
    if (b.coeff_[0] == Complex(0.0))
        throw std::domain_error("PowerSeries: division requires nonzero constant term");
    std::size_t n = std::min(a.order(), b.order());
    PowerSeries r(n);
    for (std::size_t i = 0; i <= n; ++i) {
        Complex acc = a.coeff_[i];
        for (std::size_t k = 0; k < i; ++k) acc -= r.coeff_[k] * b.coeff_[i - k];
        r.coeff_[i] = acc / b.coeff_[0];
    }
    return r;
}

double max_abs_diff(const PowerSeries& a, const PowerSeries& b) {
    std::size_t n = std::min(a.order(), b.order());
    double worst = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
        worst = std::max(worst, std::abs(a.coeff_[i] - b.coeff_[i]));
    return worst;
}

PowerSeries series_from_params(const std::vector<Complex>& params, std::size_t N) {
    std::vector<Complex> c(N + 1, Complex(0.0));
    c[0] = 1.0;
    for (const Complex& g : params) {
        for (std::size_t n = 1; n <= N; ++n) c[n] += g * c[n - 1];
    }
    return PowerSeries(std::move(c));
}

PowerSeries hadamard_E(const PowerSeries& C, const PowerSeries& D, Complex X0) {
    std::size_t n = std::min(C.order(), D.order());
    PowerSeries r(n);
    Complex xp = 1.0;
    for (std::size_t i = 0; i <= n; ++i) {
        r.set(i, C[i] * D[i] * xp);
        xp *= X0;
    }
    return r;
}

PowerSeries E_c(const PowerSeries& C, const PowerSeries& D, Complex gamma1,
                std::size_t N) {
    if (gamma1 == Complex(0.0))
        throw std::invalid_argument("E_c: distinguished parameter must be nonzero");
    std::size_t n = std::min({N, C.order(), D.order()});
    PowerSeries r(n);
    Complex prefix = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        prefix = D[i] + prefix / gamma1;
        r.set(i, C[i] * prefix);
    }
    return r;
}

PowerSeries E_d(const PowerSeries& C, const PowerSeries& D, Complex delta1,
                std::size_t N) {
    if (delta1 == Complex(0.0))
        throw std::invalid_argument("E_d: distinguished parameter must be nonzero");
    std::size_t n = std::min({N, C.order(), D.order()});
    PowerSeries r(n);
    Complex prefix = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        prefix = C[i] + prefix / delta1;
        r.set(i, D[i] * prefix);
    }
    return r;
}

} // namespace momentforge
