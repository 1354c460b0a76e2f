#ifndef G2CM_CLASSGROUP_HPP
#define G2CM_CLASSGROUP_HPP

#include <map>

#include "g2cm/ideals.hpp"

namespace g2cm {

/// One enumerated integral ideal as a factor-base exponent vector.
struct IdealVec {
    std::vector<int> e;  // exponents over the factor base
    BigInt norm;
};

struct ClassRecord {
    std::vector<BigInt> label;  // canonical reduced vector (coset label)
    BigInt min_norm;
    std::vector<int> min_rep;  // factor-base exponents of a minimal-norm ideal
};

/// Class group of K computed from the factor base below the Minkowski bound,
/// certified by exact principality tests: the trivial class is the only
/// principal one and every relation used is verified.
class ClassGroup {
  public:
    static ClassGroup compute(const CMField& K, Rng& rng);

    const std::vector<PrimeIdeal>& factor_base() const { return fb_; }
    const BigInt& h() const { return h_; }
    const std::vector<BigInt>& elementary_divisors() const { return divisors_; }
    int two_torsion_rank() const;
    BigInt two_torsion_count() const;

    /// Canonical label of the class of a factor-base exponent vector.
    std::vector<BigInt> reduce(const std::vector<BigInt>& v) const;
    std::vector<BigInt> reduce_int(const std::vector<int>& v) const;
    /// Class label of an arbitrary fractional ideal (factored over the base).
    std::vector<BigInt> class_of(const CMField& K, const FracIdeal& I) const;
    /// Class label of a prime ideal of any norm: finds x in P with smooth
    /// cofactor (x) = P*J and returns -[J]. Throws RelationSearchExhausted.
    std::vector<BigInt> class_of_prime(const CMField& K, const FracIdeal& P) const;
    std::vector<BigInt> label_zero() const { return std::vector<BigInt>(fb_.size(), 0); }

    /// Build the ideal for an exponent vector.
    FracIdeal ideal_of(const CMField& K, const std::vector<int>& e) const;
    /// Per-class minimal norms (exhaustive below the given bound; defaults to
    /// the Minkowski bound).
    std::vector<ClassRecord> min_norms(const CMField& K) const;
    std::vector<ClassRecord> min_norms_at(const CMField& K, const BigInt& bound) const;

    /// All integral ideals of norm <= X as exponent vectors (sorted by norm).
    /// Factor base is extended internally when X exceeds the Minkowski bound.
    std::vector<IdealVec> enumerate_ideals(const CMField& K, const BigInt& X) const;

    /// Decomposition Z^B/Lambda == prod Z/d_i: returns per-class vector of
    /// exponents in the cyclic decomposition for a class label.
    std::vector<BigInt> cyclic_coords(const std::vector<BigInt>& label) const;
    const std::vector<BigInt>& cyclic_orders() const { return divisors_; }

    /// All h distinct class labels.
    const std::vector<std::vector<BigInt>>& classes() const { return classes_; }

    /// Type-norm subgroup H0 = { [sigma_a(I) sigma_b(I)] } and its order.
    struct TypeNormImage {
        std::vector<std::vector<BigInt>> subgroup;  // labels of H0 elements
        BigInt order;
    };
    TypeNormImage type_norm_image(const CMField& K, const CMType& type) const;

  private:
    std::vector<PrimeIdeal> fb_;
    IntMatrix rel_hnf_;  // lower-triangular rows spanning the relation lattice
    BigInt h_;
    std::vector<BigInt> divisors_;        // nontrivial elementary divisors
    IntMatrix snf_right_;                 // change of basis for cyclic coords
    std::vector<BigInt> snf_diag_;        // full diagonal (with 1s)
    std::vector<std::vector<BigInt>> classes_;
    BigInt mk_floor_;
};

} // namespace g2cm

#endif
