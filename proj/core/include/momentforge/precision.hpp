#pragma once

#include <cmath>
#include <stdexcept>

namespace momentforge {

// Working-precision descriptor threaded through every numerical routine.
//
// `digits` is the requested decimal accuracy.  Routines promise relative
// errors within a small factor of 10^(1-digits) unless their own contract
// states otherwise.  Two presets matter in practice:
//
//   * standard (16 digits): double-like accuracy, used for direct L-value
//     computation and quadrature;
//   * extended (>= 60 digits): required by the confluent-limit evaluation of
//     the moment polynomial, where the alternating swap-term sum cancels
//     roughly delta^-9 of headroom (27+ digits at delta = 1e-3).
struct PrecisionContext {
    int digits = 16;

    PrecisionContext() = default;
    explicit PrecisionContext(int d) : digits(d) {
        if (d < 8 || d > 400)
            throw std::invalid_argument("PrecisionContext: digits out of range [8, 400]");
    }

    static PrecisionContext standard() { return PrecisionContext(16); }
    static PrecisionContext extended() { return PrecisionContext(60); }

    // Binary precision for the multiprecision backend, with guard bits so that
    // D-digit results survive modest error accumulation.
    long bits() const {
        return static_cast<long>(std::ceil(digits * 3.3219280948873623)) + 48;
    }

    // Unit of relative error the context promises to track.
    double epsilon() const { return std::pow(10.0, 1 - digits); }
};

} // namespace momentforge
