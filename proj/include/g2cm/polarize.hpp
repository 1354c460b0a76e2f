#ifndef G2CM_POLARIZE_HPP
#define G2CM_POLARIZE_HPP

#include "g2cm/classgroup.hpp"

namespace g2cm {

/// CM triple (I, xi, Phi): seed of a principally polarised CM abelian surface.
struct CMTriple {
    FracIdeal I;
    NFElement xi;
    CMType type;
};

/// Riemann form E(Phi(a), Phi(b)) = -Tr_{K/Q}(xi conj(a) b), exact.
BigRat riemann_form(const CMField& K, const NFElement& xi, const NFElement& a,
                    const NFElement& b);

/// Hermitian form H(Phi(a), Phi(b)) = -2i Tr_Phi(xi conj(a) b) as a ball.
ComplexBall hermitian_form(const CMField& K, const CMTriple& t, const NFElement& a,
                           const NFElement& b, mpfr_prec_t prec);

/// All principal polarizations on (I, Phi) up to xi ~ (v conj v) xi; empty when
/// the class is not polarizable for this type. Candidates sweep unit multiples
/// (+- zeta^j eps^k, |k| <= kmax) of one generator; a warning flag is set when
/// a boundary k survives deduplication.
struct PolarizationSearch {
    std::vector<CMTriple> triples;
    bool boundary_warning = false;
};
PolarizationSearch find_polarizations(const CMField& K, const CMType& type, const FracIdeal& I,
                                      int kmax = 4, mpfr_prec_t prec = 192);

/// Exact symplectic Z-basis (e1..e4) of I for the pairing
/// T(a,b) = Tr(xi conj(a) b): Gram becomes -J (so that Im Z > 0 downstream),
/// i.e. T(e1,e3) = T(e2,e4) = -1. Throws NotUnimodular when the Pfaffian
/// of the pairing on I is not +-1.
std::vector<NFElement> symplectic_basis(const CMField& K, const CMTriple& t);

/// Exact Pfaffian of the pairing Gram on the lattice basis of I.
BigRat pairing_pfaffian(const CMField& K, const CMTriple& t);

/// Classes [I] (canonical labels) carrying at least one polarization for the
/// type, with a representative triple each.
struct PolarizableCoset {
    std::vector<std::vector<BigInt>> classes;
    std::vector<CMTriple> reps;      // one per class, same order
    bool is_coset_of_H0 = false;     // true when the set is a single H0-coset
    BigInt H0_order = 0;
    /// Partition of `classes` into H0-cosets = Galois orbits of the CM points.
    std::vector<std::vector<size_t>> orbits;
};
PolarizableCoset polarizable_coset(const CMField& K, const CMType& type, const ClassGroup& G,
                                   mpfr_prec_t prec = 192);

} // namespace g2cm

#endif
