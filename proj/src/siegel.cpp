#include "g2cm/siegel.hpp"

#include <algorithm>
#include <cmath>

namespace g2cm {

namespace {

bool is_symplectic(const IntMatrix& M) {
    IntMatrix J(4, 4);
    J.at(0, 2) = 1;
    J.at(1, 3) = 1;
    J.at(2, 0) = -1;
    J.at(3, 1) = -1;
    return M.transpose() * J * M == J;
}

struct Mat2 {
    ComplexBall a, b, c, d;  // [[a,b],[c,d]]
    ComplexBall det() const { return a * d - b * c; }
};

Mat2 block(const IntMatrix& M, int r, int c, mpfr_prec_t prec) {
    auto ent = [&](int i, int j) { return ComplexBall::exact_int(M.at(i, j), 0, prec); };
    return {ent(r, c), ent(r, c + 1), ent(r + 1, c), ent(r + 1, c + 1)};
}

Mat2 mul(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
}

Mat2 add(const Mat2& x, const Mat2& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }

Mat2 inv2(const Mat2& m) {
    ComplexBall det = m.det();
    ComplexBall di = det.inv();
    return {m.d * di, -(m.b * di), -(m.c * di), m.a * di};
}

Mat2 zmat(const PeriodPoint& p) { return {p.z1, p.z12, p.z12, p.z2}; }

}  // namespace

PeriodPoint apply_symplectic(const IntMatrix& M, const PeriodPoint& p) {
    mpfr_prec_t prec = p.prec();
    Mat2 A = block(M, 0, 0, prec), B = block(M, 0, 2, prec), C = block(M, 2, 0, prec),
         D = block(M, 2, 2, prec);
    Mat2 Z = zmat(p);
    Mat2 num = add(mul(A, Z), B);
    Mat2 den = add(mul(C, Z), D);
    Mat2 Zn = mul(num, inv2(den));
    PeriodPoint out;
    out.z1 = Zn.a;
    out.z2 = Zn.d;
    // enforce symmetry: intersect the two off-diagonal entries
    out.z12 = {RealBall::join(Zn.b.re, Zn.c.re), RealBall::join(Zn.b.im, Zn.c.im)};
    out.reduction = M * p.reduction;
    out.boundary_flag = p.boundary_flag;
    return out;
}

PeriodPoint period_matrix(const CMField& K, const std::vector<NFElement>& basis,
                          const CMType& type, mpfr_prec_t prec) {
    const Embeddings& E = K.embeddings(prec);
    auto emb = [&](const NFElement& e, int j) { return E.eval(e, j); };
    // [Phi(e1) Phi(e2)] W = [Phi(e3) Phi(e4)], solve for columns of Z
    Mat2 P{emb(basis[0], type.a), emb(basis[1], type.a), emb(basis[0], type.b),
           emb(basis[1], type.b)};
    Mat2 Q{emb(basis[2], type.a), emb(basis[3], type.a), emb(basis[2], type.b),
           emb(basis[3], type.b)};
    Mat2 Z = mul(inv2(P), Q);
    PeriodPoint out;
    out.z1 = Z.a;
    out.z2 = Z.d;
    if (!(Z.b - Z.c).contains_zero()) throw Error("period matrix not symmetric");
    out.z12 = {RealBall::join(Z.b.re, Z.c.re), RealBall::join(Z.b.im, Z.c.im)};
    // positive definiteness, certified
    auto sy1 = out.z1.im.sign_certain();
    auto sdet = out.det_y().sign_certain();
    if (!sy1 || !sdet) throw PrecisionExhausted("period matrix Y definiteness undecided");
    if (*sy1 <= 0 || *sdet <= 0) throw Error("period matrix Y not positive definite");
    return out;
}

const std::vector<IntMatrix>& s3_family() {
    static std::vector<IntMatrix> fam = [] {
        std::vector<IntMatrix> v;
        // embedded SL2 inversions on z1 and z2
        {
            IntMatrix M(4, 4);
            M.at(0, 2) = -1;
            M.at(1, 1) = 1;
            M.at(2, 0) = 1;
            M.at(3, 3) = 1;
            v.push_back(M);
            IntMatrix N(4, 4);
            N.at(0, 0) = 1;
            N.at(1, 3) = -1;
            N.at(2, 2) = 1;
            N.at(3, 1) = 1;
            v.push_back(N);
        }
        // M = [[0,-I],[I,D]] for symmetric D with entries in {-1,0,1}
        for (int d1 = -1; d1 <= 1; ++d1)
            for (int d2 = -1; d2 <= 1; ++d2)
                for (int d12 = -1; d12 <= 1; ++d12) {
                    IntMatrix M(4, 4);
                    M.at(0, 2) = -1;
                    M.at(1, 3) = -1;
                    M.at(2, 0) = 1;
                    M.at(3, 1) = 1;
                    M.at(2, 2) = d1;
                    M.at(2, 3) = d12;
                    M.at(3, 2) = d12;
                    M.at(3, 3) = d2;
                    v.push_back(M);
                }
        // rank-1 C members: det(CZ+D) = +-(z1 + z2 -+ 2 z12 +- 1)
        for (int s = -1; s <= 1; s += 2)
            for (int e = -1; e <= 1; e += 2) {
                IntMatrix M(4, 4);
                M.at(0, 0) = -e;
                M.at(1, 1) = -e;
                M.at(2, 0) = 1;
                M.at(2, 1) = -s;
                M.at(3, 0) = -s;
                M.at(3, 1) = 1;
                M.at(2, 2) = -e;
                M.at(3, 3) = -e;
                v.push_back(M);
            }
        for (auto& M : v)
            if (!is_symplectic(M)) throw Error("s3_family: non-symplectic member");
        return v;
    }();
    return fam;
}

namespace {

// |det(CZ+D)|^2 as a real ball
RealBall abs_det_cd(const IntMatrix& M, const PeriodPoint& p) {
    Mat2 C = block(M, 2, 0, p.prec()), D = block(M, 2, 2, p.prec());
    ComplexBall det = add(mul(C, zmat(p)), D).det();
    return det.norm();
}

}  // namespace

PeriodPoint reduce_to_F2(const PeriodPoint& p_in, long max_steps) {
    PeriodPoint p = p_in;
    mpfr_prec_t prec = p.prec();
    for (long step = 0; step < max_steps; ++step) {
        // (S1) translate real part by nearest integers
        BigInt t1 = p.z1.re.mid_round(), t2 = p.z2.re.mid_round(), t12 = p.z12.re.mid_round();
        if (t1 != 0 || t2 != 0 || t12 != 0) {
            IntMatrix M = IntMatrix::identity(4);
            M.at(0, 2) = -t1;
            M.at(0, 3) = -t12;
            M.at(1, 2) = -t12;
            M.at(1, 3) = -t2;
            p = apply_symplectic(M, p);
        }
        // (S2) GL2-reduce the imaginary part (decisions on midpoints)
        for (int it = 0; it < 64; ++it) {
            double y1 = p.z1.im.mid_d(), y2 = p.z2.im.mid_d(), y12 = p.z12.im.mid_d();
            IntMatrix U(2, 2);
            bool have = false;
            if (y1 > y2 * (1 + 1e-18)) {
                U.at(0, 1) = 1;
                U.at(1, 0) = 1;
                have = true;
            } else if (std::abs(2 * y12) > y1 * (1 + 1e-15)) {
                BigInt q = (p.z12.im / p.z1.im).mid_round();
                if (q != 0) {
                    U.at(0, 0) = 1;
                    U.at(1, 1) = 1;
                    U.at(1, 0) = -q;
                    have = true;
                }
            } else if (y12 < -1e-40) {
                U.at(0, 0) = 1;
                U.at(1, 1) = -1;
                have = true;
            }
            if (!have) break;
            // embed U: Z -> U Z U^T
            IntMatrix M(4, 4);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) M.at(i, j) = U.at(i, j);
            // lower-right block = (U^{-1})^T; |det U| = 1
            BigInt det = U.at(0, 0) * U.at(1, 1) - U.at(0, 1) * U.at(1, 0);
            IntMatrix Vt(2, 2);
            Vt.at(0, 0) = U.at(1, 1) * det;
            Vt.at(1, 1) = U.at(0, 0) * det;
            Vt.at(0, 1) = -U.at(1, 0) * det;
            Vt.at(1, 0) = -U.at(0, 1) * det;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) M.at(2 + i, 2 + j) = Vt.at(i, j);
            p = apply_symplectic(M, p);
        }
        // (S1) again
        t1 = p.z1.re.mid_round();
        t2 = p.z2.re.mid_round();
        t12 = p.z12.re.mid_round();
        if (t1 != 0 || t2 != 0 || t12 != 0) {
            IntMatrix M = IntMatrix::identity(4);
            M.at(0, 2) = -t1;
            M.at(0, 3) = -t12;
            M.at(1, 2) = -t12;
            M.at(1, 3) = -t2;
            p = apply_symplectic(M, p);
        }
        // (S3) find a certified violator and apply the best one
        const IntMatrix* best = nullptr;
        double best_val = 1.0;
        bool straddle = false;
        for (const auto& M : s3_family()) {
            RealBall d2 = abs_det_cd(M, p);
            auto lt = d2.lt_certain(RealBall::exact_int(1, prec));
            if (lt.has_value() && *lt) {
                double v = d2.mid_d();
                if (v < best_val) {
                    best_val = v;
                    best = &M;
                }
            } else if (!lt.has_value()) {
                straddle = true;
            }
        }
        if (!best) {
            if (straddle) p.boundary_flag = true;
            // verify the certificate exactly before returning
            if (!is_symplectic(p.reduction)) throw Error("reduction certificate not symplectic");
            return p;
        }
        p = apply_symplectic(*best, p);
    }
    throw PrecisionExhausted("reduce_to_F2: step cap exceeded");
}

IntMatrix random_symplectic(Rng& rng, int words) {
    IntMatrix M = IntMatrix::identity(4);
    for (int w = 0; w < words; ++w) {
        int k = static_cast<int>(rng.below(3));
        IntMatrix G = IntMatrix::identity(4);
        if (k == 0) {
            long b11 = rng.in_range(-1, 1), b12 = rng.in_range(-1, 1), b22 = rng.in_range(-1, 1);
            G.at(0, 2) = b11;
            G.at(0, 3) = b12;
            G.at(1, 2) = b12;
            G.at(1, 3) = b22;
        } else if (k == 1) {
            G = IntMatrix(4, 4);
            G.at(0, 2) = -1;
            G.at(1, 3) = -1;
            G.at(2, 0) = 1;
            G.at(3, 1) = 1;
        } else {
            IntMatrix U(2, 2);
            if (rng.below(2)) {
                U.at(0, 0) = 1;
                U.at(1, 1) = 1;
                U.at(0, 1) = rng.in_range(-1, 1);
            } else {
                U.at(0, 1) = 1;
                U.at(1, 0) = 1;
            }
            BigInt det = U.at(0, 0) * U.at(1, 1) - U.at(0, 1) * U.at(1, 0);
            G = IntMatrix(4, 4);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) G.at(i, j) = U.at(i, j);
            G.at(2, 2) = U.at(1, 1) * det;
            G.at(3, 3) = U.at(0, 0) * det;
            G.at(2, 3) = -U.at(1, 0) * det;
            G.at(3, 2) = -U.at(0, 1) * det;
        }
        M = M * G;
    }
    if (!is_symplectic(M)) throw Error("random_symplectic: internal error");
    return M;
}

int s3_spot_check(const PeriodPoint& p, int count, std::uint64_t seed) {
    Rng rng(seed);
    int violations = 0;
    RealBall one = RealBall::exact_int(1, p.prec());
    for (int i = 0; i < count; ++i) {
        IntMatrix M = random_symplectic(rng, 6);
        RealBall d2 = abs_det_cd(M, p);
        auto lt = d2.lt_certain(one);
        if (lt.has_value() && *lt) {
            // certified violation only counts off the boundary
            RealBall gap = one - d2;
            if (gap.lo_d() > 1e-12) ++violations;
        }
    }
    return violations;
}

IneqReport check_inequalities(const PeriodPoint& p, const BigInt& disc_K,
                              const BigInt& min_norm_inv_class) {
    mpfr_prec_t prec = p.prec();
    IneqReport r;
    RealBall y1 = p.y1(), y2 = p.y2(), detY = p.det_y();
    RealBall lhs_a = y1 * y2;
    RealBall rhs_a = RealBall::exact_rat(BigRat(4, 3), prec) * detY;
    r.slack_y1y2 = rhs_a - lhs_a;
    r.y1y2_le_43detY = lhs_a.lt_certain(rhs_a);

    RealBall c916 = RealBall::exact_rat(BigRat(9, 16), prec);
    RealBall c98 = RealBall::exact_rat(BigRat(9, 8), prec);
    r.slack_detY_9_16 = detY - c916;
    r.slack_detY_9_8 = detY - c98;
    r.detY_ge_9_16 = c916.lt_certain(detY);
    r.detY_ge_9_8 = c98.lt_certain(detY);

    RealBall absz12 = p.z12.norm().sqrt();
    RealBall rhs_c = RealBall::exact_rat(BigRat(2, 3), prec) /
                     RealBall::exact_int(abs(disc_K), prec).sqrt();
    r.slack_z12 = absz12 - rhs_c;
    r.z12_ge_23_sqrtD = rhs_c.lt_certain(absz12);

    RealBall trY = p.tr_y();
    RealBall rhs_d = RealBall::exact_rat(BigRat(2, 3), prec) *
                     (RealBall::exact_int(abs(disc_K), prec).sqrt() /
                      RealBall::exact_int(min_norm_inv_class, prec))
                         .sqrt();
    r.slack_trY = rhs_d - trY;
    r.trY_le_bound = trY.lt_certain(rhs_d);
    return r;
}

} // namespace g2cm
