#ifndef G2CM_NUMBERFIELD_HPP
#define G2CM_NUMBERFIELD_HPP

#include <array>
#include <map>
#include <mutex>
#include <memory>
#include <vector>

#include "g2cm/intmatrix.hpp"
#include "g2cm/zpoly.hpp"

namespace g2cm {

class CMField;

/// Element of a quartic field in power-basis coordinates.
struct NFElement {
    std::array<BigRat, 4> pw{};

    static NFElement zero() { return {}; }
    static NFElement one() {
        NFElement e;
        e.pw[0] = 1;
        return e;
    }
    static NFElement from_int(const BigInt& n) {
        NFElement e;
        e.pw[0] = n;
        return e;
    }
    bool operator==(const NFElement& o) const { return pw == o.pw; }
    bool is_zero() const {
        return pw[0] == 0 && pw[1] == 0 && pw[2] == 0 && pw[3] == 0;
    }
    NFElement operator-() const;
    NFElement operator+(const NFElement& o) const;
    NFElement operator-(const NFElement& o) const;
    /// Numerator poly and denominator (cleared).
    std::pair<ZPoly, BigInt> as_int_poly() const;
};

/// Real quadratic field data for the CM field's fixed subfield.
struct RealQuadField {
    BigInt disc_F;
    // fundamental unit (x + y*sqrt(disc_F)) / 2
    BigInt unit_x, unit_y;
    int unit_norm;  // +1 or -1
    BigInt h_F;
    RealBall regulator(mpfr_prec_t prec) const;
};

/// Construct real quadratic field data from a fundamental discriminant.
/// Throws NotFundamental otherwise.
RealQuadField real_quad_data(const BigInt& disc_F);

struct CMType {
    int a, b;  // embedding indices, non-conjugate pair
    bool operator==(const CMType& o) const = default;
};

/// Galois automorphism of the quartic field.
struct Automorphism {
    std::array<BigRat, 4> alpha_image;  // sigma(alpha) in power basis
    IntMatrix on_basis;                 // action on integral-basis coordinates (4x4, |det|=1)
    std::array<int, 4> emb_perm;        // phi_j o sigma = phi_{emb_perm[j]}
    int order = 0;
};

/// Certified embeddings of the field at a fixed precision.
struct Embeddings {
    mpfr_prec_t prec;
    std::vector<ComplexBall> roots;                   // roots[j]: root of embedding j
    std::vector<std::array<ComplexBall, 4>> root_pw;  // powers 0..3 of each root
    ComplexBall eval(const NFElement& e) const = delete;
    ComplexBall eval(const NFElement& e, int j) const;
};

/// Cyclic Galois quartic CM field with maximal order.
class CMField {
  public:
    /// Round-2 style maximal order construction. Throws NotCM / NotCyclic.
    static CMField make(const ZPoly& defining, Rng& rng);
    static CMField make(const ZPoly& defining) {
        Rng rng(0);
        return make(defining, rng);
    }

    const ZPoly& poly() const { return f_; }
    const BigInt& disc() const { return disc_; }
    /// Integral basis: row i = coordinates of b_i in the power basis.
    const QMatrix& basis() const { return basis_; }
    const QMatrix& basis_inv() const { return basis_inv_; }
    /// Multiplication table: (i,j) -> integral coordinates of b_i * b_j.
    const std::array<std::array<std::array<BigInt, 4>, 4>, 4>& mult_table() const {
        return mult_;
    }

    const std::vector<Automorphism>& automorphisms() const { return auts_; }
    const Automorphism& conj() const { return auts_[conj_idx_]; }
    /// Order-4 generator; throws NotCyclic when the group is V4.
    const Automorphism& galois_gen() const {
        if (gen_idx_ < 0) throw NotCyclic("galois_gen: group is not cyclic");
        return auts_[gen_idx_];
    }
    bool is_cyclic() const { return gen_idx_ >= 0; }
    /// Some automorphism outside {id, conj}; equals galois_gen() when cyclic.
    const Automorphism& aux_gen() const { return auts_[aux_idx_]; }

    const RealQuadField& subfield_F() const { return F_; }
    /// sqrt(disc_F) as an exact element of the field.
    const NFElement& sqrt_discF() const { return sqrtDF_; }
    /// Fundamental unit of F as an element of the field.
    const NFElement& fund_unit() const { return unitF_; }
    /// Generator of the torsion unit group and its order (w_K).
    const NFElement& torsion_unit() const { return zeta_; }
    int torsion_order() const { return w_; }

    /// Certified embeddings at >= prec bits, cached. Ordering convention:
    /// 0 = phi (root of largest positive imaginary part), 1 = conj(phi),
    /// 2 = phi o sigma, 3 = conj(phi o sigma), sigma the stored generator.
    const Embeddings& embeddings(mpfr_prec_t prec) const;

    // ---- element operations ----
    NFElement mul(const NFElement& a, const NFElement& b) const;
    NFElement apply(const Automorphism& s, const NFElement& a) const;
    NFElement conj_elt(const NFElement& a) const { return apply(conj(), a); }
    NFElement inverse(const NFElement& a) const;
    NFElement pow_elt(const NFElement& a, long e) const;
    BigRat trace(const NFElement& a) const;
    BigRat norm(const NFElement& a) const;
    NFElement from_integral_coords(const std::array<BigInt, 4>& c) const;
    /// Exact integral-basis coordinates (rational in general).
    std::array<BigRat, 4> to_basis_coords(const NFElement& a) const;
    bool is_integral(const NFElement& a) const;

    /// The four CM types in the embedding-index convention.
    std::vector<CMType> cm_types() const;
    /// Partition of the four types into conjugation classes {Phi, conj Phi}.
    std::vector<std::pair<CMType, CMType>> conjugation_classes() const;

    /// Trace-dual basis of the maximal order (rows, power coords) = D^{-1} basis.
    QMatrix trace_dual() const;

  private:
    ZPoly f_;
    BigInt disc_;
    QMatrix basis_, basis_inv_;
    std::array<BigRat, 8> power_sums_;  // Tr(alpha^k), k=0..7
    std::array<std::array<std::array<BigInt, 4>, 4>, 4> mult_;
    std::vector<Automorphism> auts_;
    int conj_idx_ = -1, gen_idx_ = -1, aux_idx_ = -1;
    RealQuadField F_;
    NFElement sqrtDF_, unitF_, zeta_;
    int w_ = 2;
    mutable std::map<mpfr_prec_t, std::shared_ptr<Embeddings>> emb_cache_;
    mutable std::shared_ptr<std::mutex> emb_mutex_ = std::make_shared<std::mutex>();

    std::array<BigRat, 4> mul_pw(const std::array<BigRat, 4>& a,
                                 const std::array<BigRat, 4>& b) const;
};

} // namespace g2cm

#endif
