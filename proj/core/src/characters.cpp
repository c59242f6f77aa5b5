#include "momentforge/characters.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace momentforge {

namespace detail {

// One cyclic factor of the unit group: the residues live mod `modulus`
// (a prime power dividing q), the factor is cyclic of size `order`, and
// `dlog[r]` is the exponent of r on the chosen generator (sentinel for
// residues this factor does not see as units, and for the 2^k case where a
// residue's exponent on the other generator is stored separately).
struct CyclicComponent {
    std::uint64_t modulus = 1;
    std::uint64_t order = 1;
    std::uint64_t prime = 0;
    int prime_exponent = 0;
    bool is_two_part_minus_one = false;  // the <-1> half of (Z/2^k)*
    bool is_two_part_five = false;       // the <5> half of (Z/2^k)*
    std::vector<std::uint64_t> dlog;
};

struct CharacterGroupData {
    std::uint64_t q = 1;
    std::vector<CyclicComponent> components;
    std::uint64_t group_exponent = 1;          // L = lcm of component orders
    std::vector<std::uint64_t> weights;        // L / order, per component
    std::vector<Complex> roots;                // e(k/L), k = 0..L-1
};

} // namespace detail

namespace {

using detail::CharacterGroupData;
using detail::CyclicComponent;

constexpr std::uint64_t kNonUnit = ~0ull;

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = static_cast<std::uint64_t>((static_cast<__uint128_t>(r) * a) % m);
        a = static_cast<std::uint64_t>((static_cast<__uint128_t>(a) * a) % m);
        e >>= 1;
    }
    return r;
}

// Smallest primitive root mod the odd prime p.
std::uint64_t primitive_root_mod_p(std::uint64_t p) {
    Factorization f = factorize(p - 1);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (const auto& [ell, e] : f.factors) {
            (void)e;
            if (powmod_u64(g, (p - 1) / ell, p) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw std::logic_error("primitive root search failed");
}

// Generator of the cyclic group (Z/p^e Z)* for odd p: a primitive root mod p
// lifted so that it stays primitive mod p^2 (then mod every power).
std::uint64_t primitive_root_mod_pe(std::uint64_t p, int e) {
    std::uint64_t g = primitive_root_mod_p(p);
    if (e >= 2 && powmod_u64(g, p - 1, p * p) == 1) g += p;
    return g;
}

void build_odd_component(CharacterGroupData& data, std::uint64_t p, int e) {
    CyclicComponent c;
    c.prime = p;
    c.prime_exponent = e;
    c.modulus = 1;
    for (int k = 0; k < e; ++k) c.modulus *= p;
    c.order = c.modulus / p * (p - 1);
    c.dlog.assign(c.modulus, kNonUnit);
    std::uint64_t g = primitive_root_mod_pe(p, e);
    std::uint64_t x = 1;
    for (std::uint64_t j = 0; j < c.order; ++j) {
        c.dlog[x] = j;
        x = static_cast<std::uint64_t>((static_cast<__uint128_t>(x) * g) % c.modulus);
    }
    data.components.push_back(std::move(c));
}

void build_two_components(CharacterGroupData& data, int k) {
    std::uint64_t m = 1ull << k;
    if (k == 1) return;  // (Z/2)* is trivial
    if (k == 2) {
        CyclicComponent c;
        c.prime = 2;
        c.prime_exponent = 2;
        c.modulus = 4;
        c.order = 2;
        c.is_two_part_minus_one = true;
        c.dlog.assign(4, kNonUnit);
        c.dlog[1] = 0;
        c.dlog[3] = 1;
        data.components.push_back(std::move(c));
        return;
    }
    // k >= 3: (Z/2^k)* = <-1> x <5>.
    CyclicComponent cm, cf;
    cm.prime = cf.prime = 2;
    cm.prime_exponent = cf.prime_exponent = k;
    cm.modulus = cf.modulus = m;
    cm.order = 2;
    cf.order = m >> 2;
    cm.is_two_part_minus_one = true;
    cf.is_two_part_five = true;
    cm.dlog.assign(m, kNonUnit);
    cf.dlog.assign(m, kNonUnit);
    for (std::uint64_t s = 0; s < 2; ++s) {
        std::uint64_t x = (s == 0) ? 1 : m - 1;
        for (std::uint64_t j = 0; j < cf.order; ++j) {
            cm.dlog[x] = s;
            cf.dlog[x] = j;
            x = (x * 5) % m;
        }
    }
    data.components.push_back(std::move(cm));
    data.components.push_back(std::move(cf));
}

std::shared_ptr<const CharacterGroupData> build_group_data(std::uint64_t q) {
    if (q == 0) throw std::invalid_argument("character_group: q must be positive");
    auto data = std::make_shared<CharacterGroupData>();
    data->q = q;
    Factorization f = factorize(q);
    for (const auto& [p, e] : f.factors) {
        if (p == 2)
            build_two_components(*data, e);
        else
            build_odd_component(*data, p, e);
    }
    std::uint64_t L = 1;
    for (const auto& c : data->components) L = std::lcm(L, c.order);
    data->group_exponent = L;
    data->weights.reserve(data->components.size());
    for (const auto& c : data->components) data->weights.push_back(L / c.order);
    data->roots.resize(L);
    for (std::uint64_t k = 0; k < L; ++k) {
        double ang = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(L);
        data->roots[k] = Complex(std::cos(ang), std::sin(ang));
    }
    return data;
}

} // namespace

DirichletCharacter::DirichletCharacter(std::shared_ptr<const detail::CharacterGroupData> g,
                                       std::vector<std::uint64_t> exponents)
    : group_(std::move(g)), exponents_(std::move(exponents)) {}

std::uint64_t DirichletCharacter::modulus() const { return group_->q; }

bool DirichletCharacter::eval_index(std::uint64_t n, std::uint64_t& k, std::uint64_t& L) const {
    const CharacterGroupData& g = *group_;
    L = g.group_exponent;
    std::uint64_t r = n % g.q;
    if (g.q == 1) { k = 0; return true; }
    if (std::gcd(r, g.q) != 1) return false;
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < g.components.size(); ++i) {
        const CyclicComponent& c = g.components[i];
        std::uint64_t d = c.dlog[r % c.modulus];
        __uint128_t term = static_cast<__uint128_t>(d) * exponents_[i] % c.order;
        term = term * g.weights[i] % L;
        acc = (acc + static_cast<std::uint64_t>(term)) % L;
    }
    k = acc;
    return true;
}

Complex DirichletCharacter::eval(std::uint64_t n) const {
    std::uint64_t k, L;
    if (!eval_index(n, k, L)) return Complex(0.0, 0.0);
    return group_->roots[k];
}

bool DirichletCharacter::is_even() const {
    const CharacterGroupData& g = *group_;
    if (g.q <= 2) return true;
    std::uint64_t L = g.group_exponent;
    std::uint64_t acc = 0;
    std::uint64_t r = g.q - 1;
    for (std::size_t i = 0; i < g.components.size(); ++i) {
        const CyclicComponent& c = g.components[i];
        std::uint64_t d = c.dlog[r % c.modulus];
        __uint128_t term = static_cast<__uint128_t>(d) * exponents_[i] % c.order;
        term = term * g.weights[i] % L;
        acc = (acc + static_cast<std::uint64_t>(term)) % L;
    }
    return acc == 0;
}

bool DirichletCharacter::is_principal() const {
    for (std::uint64_t a : exponents_)
        if (a != 0) return false;
    return true;
}

std::uint64_t DirichletCharacter::conductor() const {
    if (conductor_cache_) return conductor_cache_;
    const CharacterGroupData& g = *group_;
    std::uint64_t cond = 1;
    std::size_t i = 0;
    while (i < g.components.size()) {
        const CyclicComponent& c = g.components[i];
        if (c.prime != 2) {
            // Cyclic of order n = phi(p^e) on one generator; the character
            // factors through p^f exactly when n | a * phi(p^f).
            std::uint64_t a = exponents_[i];
            std::uint64_t p = c.prime;
            std::uint64_t n = c.order;
            std::uint64_t phi_pf = 1;  // phi(p^0)
            std::uint64_t pf = 1;
            int f = 0;
            while ((static_cast<__uint128_t>(a) * phi_pf) % n != 0) {
                ++f;
                pf *= p;
                phi_pf = (f == 1) ? (p - 1) : phi_pf * p;
            }
            cond *= pf;
            ++i;
        } else if (c.is_two_part_minus_one && !c.is_two_part_five &&
                   (i + 1 == g.components.size() || !g.components[i + 1].is_two_part_five)) {
            // Modulus 4: conductor 4 iff the character is nontrivial there.
            cond *= (exponents_[i] == 0) ? 1 : 4;
            ++i;
        } else {
            // Modulus 2^k, k >= 3: components <-1> (at i) and <5> (at i+1).
            std::uint64_t s = exponents_[i];
            std::uint64_t a = exponents_[i + 1];
            std::uint64_t n5 = g.components[i + 1].order;  // 2^(k-2)
            if (a == 0) {
                cond *= (s == 0) ? 1 : 4;
            } else {
                std::uint64_t ord = n5 / std::gcd(a, n5);  // order 2^m, m >= 1
                cond *= 4 * ord;
            }
            i += 2;
        }
    }
    conductor_cache_ = cond;
    return cond;
}

DirichletCharacter DirichletCharacter::conjugate() const {
    std::vector<std::uint64_t> e = exponents_;
    for (std::size_t i = 0; i < e.size(); ++i) {
        std::uint64_t n = group_->components[i].order;
        e[i] = (n - e[i]) % n;
    }
    return DirichletCharacter(group_, std::move(e));
}

std::uint64_t DirichletCharacter::index() const {
    std::uint64_t idx = 0;
    for (std::size_t i = exponents_.size(); i-- > 0;)
        idx = idx * group_->components[i].order + exponents_[i];
    return idx;
}

std::vector<DirichletCharacter> character_group(std::uint64_t q) {
    auto data = build_group_data(q);
    std::uint64_t count = 1;
    for (const auto& c : data->components) count *= c.order;
    std::vector<DirichletCharacter> out;
    out.reserve(count);
    std::vector<std::uint64_t> e(data->components.size(), 0);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        out.push_back(DirichletCharacter(data, e));
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (++e[i] < data->components[i].order) break;
            e[i] = 0;
        }
    }
    return out;
}

std::uint64_t phi_flat(std::uint64_t q) {
    std::uint64_t count = 0;
    for (const DirichletCharacter& chi : character_group(q))
        if (chi.is_even() && chi.is_primitive()) ++count;
    return count;
}

Complex gauss_sum(const DirichletCharacter& chi) {
    std::uint64_t q = chi.modulus();
    if (q == 1) return Complex(1.0, 0.0);
    Complex sum(0.0, 0.0);
    for (std::uint64_t a = 1; a < q; ++a) {
        Complex c = chi.eval(a);
        if (c == Complex(0.0, 0.0)) continue;
        double ang = 2.0 * M_PI * static_cast<double>(a) / static_cast<double>(q);
        sum += c * Complex(std::cos(ang), std::sin(ang));
    }
    return sum;
}

Complex epsilon_factor(const DirichletCharacter& chi) {
    if (!chi.is_primitive())
        throw std::domain_error("epsilon undefined for imprimitive character");
    return gauss_sum(chi) / std::sqrt(static_cast<double>(chi.modulus()));
}

} // namespace momentforge
