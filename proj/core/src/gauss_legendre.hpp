#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace momentforge::detail {

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1], computed
// by Newton iteration on P_n from the Chebyshev initial guesses.  Exact for
// polynomials of degree <= 2n - 1; node accuracy is machine epsilon.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendreRule(int n) : nodes(n), weights(n) {
        for (int i = 0; i < n; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                // Evaluate P_n(x) and P_n'(x) by the three-term recurrence.
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
                }
                pp = n * (x * p0 - p1) / (x * x - 1.0);
                double dx = p0 / pp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        }
    }

    // integral of f over [a, b] with a single application of the rule.
    template <class F> double integrate(const F& f, double a, double b) const {
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            acc += weights[i] * f(mid + half * nodes[i]);
        return acc * half;
    }
};

} // namespace momentforge::detail
