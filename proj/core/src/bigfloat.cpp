#include "momentforge/bigfloat.hpp"

#include <gmp.h>

#include <cstdio>
#include <cstdlib>
#include <map>
#include <mutex>

namespace momentforge {

std::string BigFloat::to_string(int digits) const {
    char* s = nullptr;
    // %.*Rg gives round-trippable decimal output at the requested digit count.
    int n = mpfr_asprintf(&s, "%.*Rg", digits, v_);
    if (n < 0 || !s) return "nan";
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

namespace {

// Exact Bernoulli numbers via the defining recurrence
//   sum_{k=0}^{n} C(n+1, k) B_k = 0  (n >= 1),  B_0 = 1,
// carried out in rational arithmetic.  The recurrence is numerically unstable
// in floating point but exact over mpq, and the full table through B_300
// costs only milliseconds.
std::vector<BigFloat> compute_bernoulli_even(int count, long prec_bits) {
    int n_max = 2 * (count - 1);
    std::vector<mpq_t> b(n_max + 1);
    for (auto& x : b) mpq_init(x);
    mpq_set_ui(b[0], 1, 1);

    mpz_t binom, t;
    mpz_init(binom);
    mpz_init(t);
    mpq_t acc, term;
    mpq_init(acc);
    mpq_init(term);

    for (int n = 1; n <= n_max; ++n) {
        // B_n = -1/(n+1) * sum_{k=0}^{n-1} C(n+1,k) B_k
        mpq_set_ui(acc, 0, 1);
        mpz_set_ui(binom, 1); // C(n+1, 0)
        for (int k = 0; k < n; ++k) {
            mpq_set_z(term, binom);
            mpq_mul(term, term, b[k]);
            mpq_add(acc, acc, term);
            // C(n+1, k+1) = C(n+1, k) * (n+1-k) / (k+1)
            mpz_mul_ui(binom, binom, static_cast<unsigned long>(n + 1 - k));
            mpz_divexact_ui(binom, binom, static_cast<unsigned long>(k + 1));
        }
        mpq_set_si(term, -1, 1);
        mpz_set_ui(t, static_cast<unsigned long>(n + 1));
        mpq_set_den(term, t);
        mpq_canonicalize(term);
        mpq_mul(acc, acc, term);
        mpq_set(b[n], acc);
    }

    std::vector<BigFloat> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        BigFloat x(prec_bits);
        mpfr_set_q(x.raw(), b[2 * i], MPFR_RNDN);
        out.push_back(std::move(x));
    }

    mpq_clear(acc);
    mpq_clear(term);
    mpz_clear(binom);
    mpz_clear(t);
    for (auto& x : b) mpq_clear(x);
    return out;
}

std::mutex g_bernoulli_mutex;
std::map<std::pair<int, long>, std::vector<BigFloat>> g_bernoulli_cache;

} // namespace

const std::vector<BigFloat>& bernoulli_even_table(int count, long prec_bits) {
    std::lock_guard<std::mutex> lock(g_bernoulli_mutex);
    auto key = std::make_pair(count, prec_bits);
    auto it = g_bernoulli_cache.find(key);
    if (it == g_bernoulli_cache.end())
        it = g_bernoulli_cache.emplace(key, compute_bernoulli_even(count, prec_bits)).first;
    return it->second;
}

} // namespace momentforge
