#ifndef G2CM_ANALYTIC_HPP
#define G2CM_ANALYTIC_HPP

#include "g2cm/classgroup.hpp"

namespace g2cm {

/// Exact ideal-count table: counts[n] = number of integral ideals of norm n.
struct IdealCountTable {
    long cutoff;
    std::vector<std::uint32_t> counts;
};
IdealCountTable ideal_counts(const CMField& K, long X);

/// Per-class smoothed-sum accumulators: for every class label (indexed as in
/// ClassGroup::classes()) the counts of ideals by norm up to the cutoff.
struct ClassedCounts {
    long cutoff;
    std::vector<std::vector<BigInt>> labels;        // class labels, sorted
    std::vector<std::vector<std::uint32_t>> cnt;    // cnt[class][norm]
    int index_of(const ClassGroup& G, const std::vector<BigInt>& label) const;
};
ClassedCounts classed_ideal_counts(const CMField& K, const ClassGroup& G, long X);

/// Character of Cl_K as exponents against the cyclic decomposition.
struct ClassCharacter {
    std::vector<BigInt> exps;  // against ClassGroup::cyclic_orders()
    bool trivial() const {
        for (auto& e : exps)
            if (e != 0) return false;
        return true;
    }
};
std::vector<ClassCharacter> class_characters(const ClassGroup& G);
/// Exact phase in [0,1): chi(label) = exp(2 pi i phase).
BigRat character_phase(const ClassGroup& G, const ClassCharacter& chi,
                       const std::vector<BigInt>& label);

/// Smoothed sum S(x,chi) = sum_I chi(I) f(N(I)/x), f(y) = y^{-1/2} e^{-y},
/// with a rigorous tail bound from a_n <= n^2 added to the radius.
ComplexBall smoothed_sum_S(const ClassGroup& G, const ClassedCounts& cc,
                           const ClassCharacter& chi, const RealBall& x, mpfr_prec_t prec);

/// S_H(x): the same sum restricted to classes in H and norms <= x (finite).
RealBall coset_sum_SH(const ClassGroup& G, const ClassedCounts& cc,
                      const std::vector<std::vector<BigInt>>& H, const RealBall& x,
                      mpfr_prec_t prec);

/// (1/#H) sum_{[I] in H} (sqrt|disc|/N([I]))^{1/2} from exact minimal norms.
RealBall min_norm_average(const CMField& K, const std::vector<ClassRecord>& recs,
                          const std::vector<std::vector<BigInt>>& H, mpfr_prec_t prec);

/// Unit index Q = [O_K^* : W_K O_F^*] in {1, 2}, decided exactly.
int unit_index_Q(const CMField& K);

struct KappaResult {
    RealBall kappa;      // residue of zeta_K at 1
    RealBall R_K;        // regulator
    int w_K;             // roots of unity
    int Q;               // unit index
    bool w_is_2;         // the paper's w = 2 specialization applies
};
KappaResult residue_kappa(const CMField& K, const ClassGroup& G, mpfr_prec_t prec);

/// Worst-case evaluation of the quoted subconvexity bound at lambda, x:
/// log|L(1/2)| <= Re sum_{n<=x} a(n)/(n^{1/2+lambda/log x}) log(x/n)/(log x log n)
///               + ((1+lambda)/2) log C / log x + (l^2+l)d/(log x)^2
///               + d e^{-l}/(sqrt x (log x)^2),  |a(n)| = d Lambda(n).
/// The constant multiplies (1+|t|)^{t_exp} |disc|^{delta_exp} with the
/// conductor model C <= 7e-4 (1+|t|)^4 |disc| (degree-4 route) or the
/// zeta_K/zeta route's (|1+2it||3+2it|^2/(4pi)^3) |disc| (degree 3).
struct ChandeeResult {
    RealBall constant;              // full prime-power worst case
    RealBall constant_primes_only;  // primes-only evaluation (diagnostic)
    BigRat delta_exp;               // exponent of |disc|
    BigRat t_exp;                   // exponent of (1+|t|)
};
ChandeeResult chandee_constant(int d, const BigRat& lambda, mpfr_prec_t prec);
/// Aggregate for the trivial character: (zeta_K/zeta) route times the
/// |zeta(1/2+it)| <= 13 (1+|t|)^{3/16} factor.
ChandeeResult chandee_zeta_aggregate(mpfr_prec_t prec);

/// Exhaustive scan of 2^{delta(N)} <= N^{1/log log N}; returns counterexamples.
std::vector<long> delta_lemma_scan(long lo, long hi);

/// RHS of the coset-size bound 215 h_F^3 R_F log d * d^{1/log log d}.
RealBall coset_size_bound_rhs(const BigInt& disc_K, const RealQuadField& F, mpfr_prec_t prec);

/// Main-theorem bound on log(disc_K), log scale:
/// max(e^64, 64 log(144000 h_F^3 R_F), 10(h0term + gF/2 + log(dF)/4 + 8.4 R_F + 1.45)).
struct MainBound {
    RealBall log_bound;
    int branch;  // 0: e^64, 1: middle, 2: height branch
    std::array<RealBall, 3> branches;
};
MainBound main_theorem_bound(const RealQuadField& F, const BigRat& h0_term,
                             const BigRat& gammaF, mpfr_prec_t prec);

} // namespace g2cm

#endif
