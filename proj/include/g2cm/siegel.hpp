#ifndef G2CM_SIEGEL_HPP
#define G2CM_SIEGEL_HPP

#include "g2cm/polarize.hpp"

namespace g2cm {

/// Point of the genus-2 Siegel space with a reduction certificate.
struct PeriodPoint {
    ComplexBall z1, z12, z2;
    IntMatrix reduction = IntMatrix::identity(4);  // exact Sp4(Z) certificate
    bool boundary_flag = false;  // some (S1)/(S3) comparison sat on the boundary

    RealBall y1() const { return z1.im; }
    RealBall y2() const { return z2.im; }
    RealBall y12() const { return z12.im; }
    RealBall x1() const { return z1.re; }
    RealBall x2() const { return z2.re; }
    RealBall x12() const { return z12.re; }
    RealBall det_y() const { return z1.im * z2.im - z12.im * z12.im; }
    RealBall tr_y() const { return z1.im + z2.im; }
    mpfr_prec_t prec() const { return z1.re.prec(); }
};

/// Period matrix of a symplectic basis under the CM type (certified solve).
PeriodPoint period_matrix(const CMField& K, const std::vector<NFElement>& basis,
                          const CMType& type, mpfr_prec_t prec);

/// Exact symplectic action Z -> (AZ+B)(CZ+D)^{-1}.
PeriodPoint apply_symplectic(const IntMatrix& M, const PeriodPoint& p);

/// The finite generator family used for (S3) (verified symplectic at startup):
/// embedded SL2 inversions, all (I,D) with symmetric D entries in {-1,0,1},
/// and the rank-1-C members.
const std::vector<IntMatrix>& s3_family();

/// Reduce into the fundamental domain; accumulates the certificate matrix.
/// Terminates within `max_steps` or throws PrecisionExhausted.
PeriodPoint reduce_to_F2(const PeriodPoint& p, long max_steps = 10000);

/// Certified random-matrix spot check of (S3): returns the number of certified
/// violations |det(CZ+D)| < 1 among `count` random symplectic matrices.
int s3_spot_check(const PeriodPoint& p, int count, std::uint64_t seed);

/// Verdicts of the reduced-point inequality suite; verdict empty = undecided.
struct IneqReport {
    std::optional<bool> y1y2_le_43detY;   // y1 y2 <= 4/3 det Y
    RealBall slack_y1y2;                  // RHS - LHS
    std::optional<bool> detY_ge_9_16;     // certified constant
    std::optional<bool> detY_ge_9_8;      // the stated constant, reported per point
    RealBall slack_detY_9_16;
    RealBall slack_detY_9_8;
    std::optional<bool> z12_ge_23_sqrtD;  // |z12| >= (2/3) |disc|^{-1/2}
    RealBall slack_z12;
    std::optional<bool> trY_le_bound;     // Tr Im Z <= (2/3) (sqrt(disc)/N)^{1/2}
    RealBall slack_trY;
};

IneqReport check_inequalities(const PeriodPoint& p, const BigInt& disc_K,
                              const BigInt& min_norm_inv_class);

/// Random symplectic matrix of bounded height (word in standard generators).
IntMatrix random_symplectic(Rng& rng, int words = 6);

} // namespace g2cm

#endif
