#ifndef G2CM_ZPOLY_HPP
#define G2CM_ZPOLY_HPP

#include <vector>

#include "g2cm/ball.hpp"
#include "g2cm/integer.hpp"

namespace g2cm {

/// Univariate polynomial over Z, coefficient of x^i at index i.
class ZPoly {
  public:
    ZPoly() = default;
    explicit ZPoly(std::vector<BigInt> c) : c_(std::move(c)) { normalize(); }
    static ZPoly x_power(int n);
    static ZPoly constant(const BigInt& v) { return ZPoly(std::vector<BigInt>{v}); }
    static ZPoly cyclotomic(unsigned n);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero poly
    bool is_zero() const { return c_.empty(); }
    const BigInt& operator[](int i) const { return c_[i]; }
    BigInt coeff(int i) const { return i >= 0 && i < (int)c_.size() ? c_[i] : BigInt(0); }
    const std::vector<BigInt>& coeffs() const { return c_; }
    const BigInt& lc() const { return c_.back(); }
    bool monic() const { return !c_.empty() && c_.back() == 1; }

    bool operator==(const ZPoly& o) const = default;

    ZPoly operator+(const ZPoly& o) const;
    ZPoly operator-(const ZPoly& o) const;
    ZPoly operator*(const ZPoly& o) const;
    ZPoly operator-() const;
    ZPoly derivative() const;
    /// Exact division; throws if not divisible.
    ZPoly divexact(const ZPoly& d) const;
    /// Remainder of this by monic d.
    ZPoly rem_monic(const ZPoly& d) const;
    /// Compose: this(g(x)) reduced mod m (m monic) when m given.
    ZPoly compose_mod(const ZPoly& g, const ZPoly& m) const;

    BigInt content() const;
    BigInt eval_int(const BigInt& x) const;
    BigRat eval_rat(const BigRat& x) const;
    ComplexBall eval_ball(const ComplexBall& x, mpfr_prec_t prec) const;

    std::string str() const;

  private:
    std::vector<BigInt> c_;
    void normalize();
};

BigInt resultant(const ZPoly& f, const ZPoly& g);
ZPoly gcd_z(const ZPoly& a, const ZPoly& b);
BigInt poly_discriminant(const ZPoly& f);

/// Monic irreducible factors of f mod p with multiplicities; coefficients
/// lifted to [0, p). Randomness (equal-degree splitting) is seeded.
/// Throws CompositeModulus if p fails a primality test.
std::vector<std::pair<ZPoly, int>> factor_mod_p(const ZPoly& f, const BigInt& p,
                                                std::uint64_t seed = 0);

/// Irreducibility of f over Q (f primitive). Uses full factorization.
bool is_irreducible_z(const ZPoly& f);

/// Factor a primitive polynomial over Z (Zassenhaus). Returns factors with
/// multiplicity; content is discarded.
std::vector<std::pair<ZPoly, int>> factor_z(const ZPoly& f);

/// Certified complex roots of a squarefree polynomial: pairwise-disjoint balls,
/// one simple root in each. Sorted by (re, im) midpoints, descending im first.
std::vector<ComplexBall> complex_roots(const ZPoly& f, mpfr_prec_t prec);

} // namespace g2cm

#endif
