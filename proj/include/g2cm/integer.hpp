#ifndef G2CM_INTEGER_HPP
#define G2CM_INTEGER_HPP

#include <gmpxx.h>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "g2cm/errors.hpp"

namespace g2cm {

using BigInt = mpz_class;
using BigRat = mpq_class;

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// g = s*a + t*b
inline BigInt xgcd(const BigInt& a, const BigInt& b, BigInt& s, BigInt& t) {
    BigInt g;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline bool is_probable_prime(const BigInt& n, int reps = 32) {
    return mpz_probab_prime_p(n.get_mpz_t(), reps) != 0;
}

inline BigInt isqrt(const BigInt& n) {
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square(const BigInt& n, BigInt* root = nullptr) {
    if (n < 0) return false;
    BigInt r = isqrt(n);
    if (r * r == n) {
        if (root) *root = r;
        return true;
    }
    return false;
}

inline BigInt pow_int(const BigInt& b, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline BigInt powmod(const BigInt& b, const BigInt& e, const BigInt& m) {
    BigInt r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline BigInt div_floor(const BigInt& a, const BigInt& m) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return q;
}

/// Nearest integer to a rational (ties toward even not needed; round half up).
inline BigInt round_rat(const BigRat& q) {
    BigInt num = q.get_num(), den = q.get_den();
    BigInt two_num = 2 * num + den;  // floor((num + den/2) / den) = floor((2num+den)/(2den))
    return div_floor(two_num, 2 * den);
}

inline std::optional<BigInt> inv_mod(const BigInt& a, const BigInt& m) {
    BigInt r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
    return r;
}

/// Deterministic seedable RNG used anywhere randomness appears.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) : eng_(seed ^ 0x9e3779b97f4a7c15ull) {}
    std::uint64_t u64() { return eng_(); }
    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return n ? eng_() % n : 0; }
    std::int64_t in_range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    BigInt big_below(const BigInt& n) {
        if (n <= 1) return 0;
        size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
        while (true) {
            BigInt r = 0;
            for (size_t i = 0; i < bits; i += 64) {
                r <<= 64;
                r += BigInt(static_cast<unsigned long>(eng_()));
            }
            r = mod_floor(r, BigInt(1) << bits);
            if (r < n) return r;
        }
    }

  private:
    std::mt19937_64 eng_;
};

/// Trial division up to `limit`, then Pollard rho (Brent) for the rest.
/// Returns prime factorization sorted by prime.
std::vector<std::pair<BigInt, unsigned>> factor(const BigInt& n, Rng& rng);
inline std::vector<std::pair<BigInt, unsigned>> factor(const BigInt& n) {
    Rng rng(0);
    return factor(n, rng);
}

/// Primes below n via sieve.
std::vector<std::uint32_t> primes_below(std::uint32_t n);

/// Kronecker symbol (a|n).
inline int kronecker(const BigInt& a, const BigInt& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

/// True if d is a fundamental discriminant (of a quadratic field), d != 1.
bool is_fundamental_discriminant(const BigInt& d);

} // namespace g2cm

#endif
