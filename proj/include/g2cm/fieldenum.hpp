#ifndef G2CM_FIELDENUM_HPP
#define G2CM_FIELDENUM_HPP

#include "g2cm/numberfield.hpp"

namespace g2cm {

/// Primitive quartic Dirichlet character cutting out a cyclic quartic CM
/// field containing the fixed real quadratic field.
struct QuarticCharacter {
    BigInt conductor;          // f
    std::vector<int> values;   // index a in [0,f): exponent e with chi(a) = i^e, -1 on non-units
    BigInt disc_K;             // disc_F * f^2 by conductor-discriminant
    BigInt disc_F;

    int value_exp(const BigInt& a) const {
        return values[mod_floor(a, conductor).get_ui()];
    }
    bool operator==(const QuarticCharacter& o) const = default;
};

/// All quartic characters (one per Galois-conjugate pair {chi, chi^3}) whose
/// field is a cyclic quartic CM field containing Q(sqrt(disc_F)), with
/// |disc_K| <= B. Sorted by (disc_K, value table).
std::vector<QuarticCharacter> enumerate_characters(const BigInt& B, const BigInt& disc_F = 5);

/// Defining polynomial via Gaussian periods with certified integer rounding
/// and exact verification (irreducible, field disc = disc_F * f^2, contains
/// sqrt(disc_F)). Throws VerificationFailed / PrecisionExhausted.
ZPoly defining_poly_from_character(const QuarticCharacter& chi, mpfr_prec_t prec = 192);

struct EnumeratedField {
    QuarticCharacter chi;
    ZPoly poly;
    BigInt disc_K;
};

/// Full enumeration: characters + verified defining polynomials.
std::vector<EnumeratedField> enumerate_fields(const BigInt& B, const BigInt& disc_F = 5);

} // namespace g2cm

#endif
