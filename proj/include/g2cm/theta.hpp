#ifndef G2CM_THETA_HPP
#define G2CM_THETA_HPP

#include "g2cm/siegel.hpp"

namespace g2cm {

/// The ten even theta characteristics (m1,m2;n1,n2), entries in {0,1} for
/// the half-integer characteristic (m/2; n/2), in a fixed order.
const std::array<std::array<int, 4>, 10>& even_characteristics();

struct ThetaVector {
    std::array<ComplexBall, 10> v;
    long truncation = 0;  // |n + m'|_inf <= truncation was summed
};

/// Certified theta constants at a point with Y positive definite. The series
/// tail is bounded through the smallest eigenvalue of Y and added to every
/// radius. Intended for reduced points (fast convergence); works for any Y>0.
ThetaVector theta_constants(const PeriodPoint& p, mpfr_prec_t prec);

/// chi10 in the normalization used throughout: product of the squares of the
/// ten even theta constants.
ComplexBall chi10(const ThetaVector& t);
/// The classical normalization 2^{-12} * product (reported alongside).
ComplexBall chi10_classical(const ThetaVector& t);

} // namespace g2cm

#endif
