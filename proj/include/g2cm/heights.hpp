#ifndef G2CM_HEIGHTS_HPP
#define G2CM_HEIGHTS_HPP

#include "g2cm/igusa.hpp"

namespace g2cm {

/// Archimedean part of one Galois orbit: -(1/(10 #H)) sum log(|chi10| det(Y)^5).
RealBall infinity_part(const std::vector<RealBall>& chi10_detY5, mpfr_prec_t prec);

struct HeightReport {
    std::array<RealBall, 4> h_inf;      // per CM type
    RealBall h0;
    RealBall faltings;                  // paper chi10 normalization
    RealBall faltings_classical;        // 2^{-12} normalization (study table)
    RealBall lower_bound;               // -(gF/2 + log(dF)/4 + log 2pi + gQ) + (sqrt5/20) log dK
    std::optional<bool> lower_bound_ok;
    RealBall finalbh_rhs;               // RHS of the explicit h_i^infty bound
    std::array<std::optional<bool>, 4> hinf_le_finalbh;
    bool below_threshold = true;        // disc_K < 9.3e7: bound is informational
};

/// Assemble the Faltings height from the four per-type infinity parts.
/// gammaF defaults to the paper's cited bound 2 for disc_F = 5;
/// gammaQ is the Euler constant value used by the paper, 0.566215.
HeightReport faltings_height(const std::array<RealBall, 4>& h_inf, const BigRat& h0,
                             const BigInt& disc_K, const RealQuadField& F,
                             mpfr_prec_t prec, const BigRat& gammaF = BigRat(2));

/// RHS of the explicit per-type bound at a given discriminant:
/// 0.74 + 8.4 R_F + (1/10 + 7200 h_F^3 R_F / d^(1/32 - 1/loglog d)
///                   + 2430 R_F / d^(1/32)) log d.
RealBall finalbh_rhs(const BigInt& disc_K, const RealQuadField& F, mpfr_prec_t prec);

} // namespace g2cm

#endif
