#ifndef G2CM_IGUSA_HPP
#define G2CM_IGUSA_HPP

#include "g2cm/theta.hpp"

namespace g2cm {

/// Igusa-Clebsch invariants (I2, I4, I6, I10) of a binary sextic via the
/// Clebsch covariants A, B, C, D; I6' := (I2 I4 - 3 I6)/2. With the classical
/// conversion constants I10 equals the sextic discriminant exactly.
template <typename T>
struct IgusaClebschT {
    T I2, I4, I6, I6p, I10;
};
using IgusaClebsch = IgusaClebschT<ComplexBall>;
using IgusaClebschExact = IgusaClebschT<BigRat>;

/// coeffs: a0..a6 of a0 x^6 + a1 x^5 z + ... + a6 z^6.
IgusaClebsch ic_from_sextic(const std::vector<ComplexBall>& coeffs, mpfr_prec_t prec);
IgusaClebschExact ic_from_sextic_exact(const std::vector<BigRat>& coeffs);

/// Rosenhain triple (lambda, mu, nu) of the curve y^2 = x(x-1)(x-l)(x-m)(x-n)
/// from theta-squared ratios (calibrated characteristic assignment).
std::array<ComplexBall, 3> rosenhain_from_thetas(const ThetaVector& t);

/// Streng absolute invariants, the normalization reproducing the published
/// integer values: j1 = I4 I6'/I10, j2 = I2 I4^3 I6'/I10^2, j3 = I4^6 I6'/I10^3.
struct InvariantTriple {
    ComplexBall j1, j2, j3;
    // Supplementary weight-0 ratios that separate moduli on the locus
    // I4*I6' = 0 where (j1,j2,j3) all vanish: I2^5/I10, I4^5/I10^2, I6^5/I10^3.
    ComplexBall s1, s2, s3;
    bool degenerate = false;  // I4*I6' ball contains zero
};
template <typename T>
std::array<T, 3> streng_js(const IgusaClebschT<T>& ic) {
    T j1 = ic.I4 * ic.I6p / ic.I10;
    T i10sq = ic.I10 * ic.I10;
    T I4sq = ic.I4 * ic.I4;
    T I4cu = I4sq * ic.I4;
    T j2 = ic.I2 * I4cu * ic.I6p / i10sq;
    T j3 = I4cu * I4cu * ic.I6p / (i10sq * ic.I10);
    return {j1, j2, j3};
}

/// Invariants of the curve attached to a reduced CM point. Throws
/// DecomposablePoint when chi10's ball contains zero.
InvariantTriple igusa_invariants(const ThetaVector& t);

/// Rational recognition by continued fractions: accepted iff the candidate of
/// denominator <= qmax lies in the ball and the ball separates it from every
/// other fraction of denominator <= qmax.
std::optional<BigRat> recognize_rational(const RealBall& x, const BigInt& qmax);

/// Class polynomials: prod (X - j_k(point)) for each of the three invariants,
/// expanded in balls and recognized as exact rationals (coefficients returned
/// lowest-degree first; leading 1 omitted). Throws RecognitionFailed.
struct ClassPolys {
    std::vector<BigRat> h1, h2, h3;
};
ClassPolys class_polynomials(const std::vector<InvariantTriple>& points, const BigInt& qmax);
/// Class polynomials of the supplementary ratios (s1, s2, s3).
ClassPolys supplementary_class_polynomials(const std::vector<InvariantTriple>& points,
                                           const BigInt& qmax);

/// Is every coefficient certifiably non-integral or recognized? Integrality
/// refutation: true when some class-poly coefficient ball excludes all
/// integers (so the invariants cannot be algebraic integers).
bool refute_integrality(const std::vector<InvariantTriple>& points);

} // namespace g2cm

#endif
