#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "momentforge/arith.hpp"

namespace momentforge {

// ---------------------------------------------------------------------------
// Dirichlet characters mod q, represented through the CRT decomposition of
// the unit group:
//
//   (Z/qZ)* = prod over p^e || q of (Z/p^e Z)*,
//
// each odd prime-power factor cyclic on a chosen primitive root, and the
// factor at 2^k (k >= 3) generated by the pair {-1, 5}.  A character is an
// exponent vector on those generators; evaluation is exact integer
// arithmetic (discrete logs + one root-of-unity table), so χ(n) is bit-for-
// bit reproducible and |χ(n)| = 1 holds to the accuracy of std::polar.
// ---------------------------------------------------------------------------

namespace detail {
struct CharacterGroupData;  // shared per-modulus tables (discrete logs, roots)
}

class DirichletCharacter {
  public:
    std::uint64_t modulus() const;

    // χ(n); 0 when gcd(n, q) > 1.  Defined for any integer n via n mod q.
    Complex eval(std::uint64_t n) const;

    // Exact evaluation as a root-of-unity index: χ(n) = e(k / L) with L the
    // group exponent; returns false when gcd(n, q) > 1.  Used wherever an
    // exact (integer) comparison matters.
    bool eval_index(std::uint64_t n, std::uint64_t& k, std::uint64_t& L) const;

    bool is_even() const;        // χ(-1) = 1, decided exactly
    bool is_principal() const;   // all exponents 0
    std::uint64_t conductor() const;
    bool is_primitive() const { return conductor() == modulus(); }

    DirichletCharacter conjugate() const;

    // Stable index of this character within character_group(q) enumeration.
    std::uint64_t index() const;

  private:
    friend std::vector<DirichletCharacter> character_group(std::uint64_t q);
    DirichletCharacter(std::shared_ptr<const detail::CharacterGroupData> g,
                       std::vector<std::uint64_t> exponents);

    std::shared_ptr<const detail::CharacterGroupData> group_;
    std::vector<std::uint64_t> exponents_;  // one per cyclic component
    mutable std::uint64_t conductor_cache_ = 0;
};

// All phi(q) characters mod q, in a fixed deterministic order (odometer over
// component exponents; the principal character comes first).
std::vector<DirichletCharacter> character_group(std::uint64_t q);

// Gauss sum tau(χ) = sum_{a mod q} χ(a) e(a/q), by the direct O(q) sum.
Complex gauss_sum(const DirichletCharacter& chi);

// Root number epsilon = tau(χ)/sqrt(q) for primitive χ (modulus 1; for even
// primitive χ this is the factor appearing in the functional equation).
// Throws for imprimitive χ.
Complex epsilon_factor(const DirichletCharacter& chi);

} // namespace momentforge
