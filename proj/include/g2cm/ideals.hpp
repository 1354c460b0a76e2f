#ifndef G2CM_IDEALS_HPP
#define G2CM_IDEALS_HPP

#include <optional>

#include "g2cm/numberfield.hpp"

namespace g2cm {

/// Fractional ideal: rank-4 lattice (HNF rows, integral-basis coordinates)
/// divided by a positive integer denominator. Always kept normalized
/// (gcd of lattice content and denominator is 1), so equality is bitwise.
struct FracIdeal {
    IntMatrix lat;  // 4x4, rows are Z-generators of the numerator ideal
    BigInt den = 1;

    bool operator==(const FracIdeal& o) const = default;
};

FracIdeal ideal_one(const CMField& K);
/// O-module generated by the given elements (must have full rank).
FracIdeal ideal_from_gens(const CMField& K, const std::vector<NFElement>& gens);
FracIdeal ideal_principal(const CMField& K, const NFElement& x);
/// Ideal generated by p and the element g (2-element style), g integral.
FracIdeal ideal_two_gen(const CMField& K, const BigInt& p, const NFElement& g);

FracIdeal ideal_mul(const CMField& K, const FracIdeal& a, const FracIdeal& b);
FracIdeal ideal_pow(const CMField& K, const FracIdeal& a, long e);
FracIdeal ideal_inv(const CMField& K, const FracIdeal& a);
FracIdeal ideal_apply(const CMField& K, const Automorphism& s, const FracIdeal& a);
BigRat ideal_norm(const CMField& K, const FracIdeal& a);
bool ideal_is_integral(const FracIdeal& a);
bool ideal_contains(const CMField& K, const FracIdeal& a, const NFElement& x);

/// The different ideal D_{K/Q}; N(D) = |disc K|.
FracIdeal different_ideal(const CMField& K);

/// Certified upper bound for the Minkowski bound (4!/4^4)(4/pi)^2 sqrt|disc|.
BigRat minkowski_bound(const CMField& K);

/// Exact principality test via short-vector enumeration in the trace form.
/// Returns a generator when principal.
std::optional<NFElement> ideal_principal_gen(const CMField& K, const FracIdeal& a);

/// All vectors x in the lattice of `a` with Tr(x conj(x)) <= bound (exact).
std::vector<NFElement> short_elements(const CMField& K, const FracIdeal& a, const BigRat& bound);

struct PrimeIdeal {
    FracIdeal I;
    BigInt p;
    int e, f;
    bool operator==(const PrimeIdeal& o) const = default;
};

/// Prime splitting. Handles index divisors through the O/pO algebra (never
/// through the defining polynomial alone). For Galois K the type (e,f,g) is
/// uniform; the product of P^e over all returned primes is verified to be (p).
std::vector<PrimeIdeal> split_prime(const CMField& K, const BigInt& p, Rng& rng);
inline std::vector<PrimeIdeal> split_prime(const CMField& K, const BigInt& p) {
    Rng rng(0);
    return split_prime(K, p, rng);
}

} // namespace g2cm

#endif
