#include "g2cm/numberfield.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace g2cm {

// ------------------------------------------------------------- NFElement

NFElement NFElement::operator-() const {
    NFElement r;
    for (int i = 0; i < 4; ++i) r.pw[i] = -pw[i];
    return r;
}

NFElement NFElement::operator+(const NFElement& o) const {
    NFElement r;
    for (int i = 0; i < 4; ++i) r.pw[i] = pw[i] + o.pw[i];
    return r;
}

NFElement NFElement::operator-(const NFElement& o) const {
    NFElement r;
    for (int i = 0; i < 4; ++i) r.pw[i] = pw[i] - o.pw[i];
    return r;
}

std::pair<ZPoly, BigInt> NFElement::as_int_poly() const {
    BigInt den = 1;
    for (int i = 0; i < 4; ++i) den = lcm(den, BigInt(pw[i].get_den()));
    std::vector<BigInt> c(4);
    for (int i = 0; i < 4; ++i) {
        BigRat v = pw[i] * BigRat(den);
        c[i] = v.get_num();
    }
    return {ZPoly(std::move(c)), den};
}

// --------------------------------------------------------- real_quad_data

RealQuadField real_quad_data(const BigInt& disc_F) {
    if (disc_F <= 1 || !is_fundamental_discriminant(disc_F))
        throw NotFundamental("real_quad_data: not a fundamental discriminant > 1");
    const BigInt& D = disc_F;
    BigInt a0 = isqrt(D);
    // reduced alpha = (P + sqrt D)/2 with P <= sqrt(D) maximal of the parity of D
    BigInt P = (mod_floor(D, 2) == mod_floor(a0, 2)) ? a0 : a0 - 1;
    BigInt Q = 2;
    BigInt P0 = P, Q0 = Q;
    BigInt m00 = 1, m01 = 0, m10 = 0, m11 = 1;
    long period = 0;
    BigInt Pc = P, Qc = Q;
    while (true) {
        BigInt a = div_floor(Pc + a0, Qc);
        BigInt n00 = m00 * a + m01, n10 = m10 * a + m11;
        m01 = m00;
        m11 = m10;
        m00 = n00;
        m10 = n10;
        ++period;
        Pc = a * Qc - Pc;
        Qc = (D - Pc * Pc) / Qc;
        if (Pc == P0 && Qc == Q0) break;
        if (period > 4000000) throw Error("real_quad_data: period overflow");
    }
    // eps = m10 * alpha + m11 with alpha = (P0 + sqrt D)/2
    RealQuadField F;
    F.disc_F = D;
    F.unit_x = m10 * P0 + 2 * m11;
    F.unit_y = m10;
    F.unit_norm = (period % 2 == 0) ? 1 : -1;
    BigInt nrm4 = F.unit_x * F.unit_x - D * F.unit_y * F.unit_y;
    if (nrm4 != 4 * BigInt(F.unit_norm)) throw Error("real_quad_data: unit norm check failed");

    // narrow class number by counting rho-cycles of reduced forms
    std::vector<std::array<BigInt, 3>> forms;
    for (BigInt b = (mod_floor(D, 2) == 0 ? BigInt(2) : BigInt(1)); b * b < D; b += 2) {
        BigInt prod4 = D - b * b;
        if (mod_floor(prod4, 4) != 0) continue;
        BigInt negac = prod4 / 4;  // = -a*c > 0
        for (BigInt a = 1; a <= negac; ++a) {
            if (mod_floor(negac, a) != 0) continue;
            for (int sa = -1; sa <= 1; sa += 2) {
                BigInt aa = sa * a;
                BigInt cc = -negac / aa;
                BigInt t1 = 2 * a - b;
                bool ok1 = (t1 < 0) ? true : (t1 * t1 < D);
                BigInt t2 = 2 * a + b;
                bool ok2 = t2 * t2 > D;
                if (ok1 && ok2) forms.push_back({aa, b, cc});
            }
        }
    }
    std::sort(forms.begin(), forms.end());
    forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
    auto find_idx = [&](const std::array<BigInt, 3>& f) -> long {
        auto it = std::lower_bound(forms.begin(), forms.end(), f);
        if (it == forms.end() || *it != f) return -1;
        return static_cast<long>(it - forms.begin());
    };
    auto rho = [&](const std::array<BigInt, 3>& f) {
        BigInt c = f[2];
        BigInt twoc = 2 * abs(c);
        BigInt bp = mod_floor(-f[1], twoc);
        // unique representative in (a0 - twoc, a0]
        bp += div_floor(a0 - bp, twoc) * twoc;
        BigInt cp = (bp * bp - D) / (4 * c);
        return std::array<BigInt, 3>{c, bp, cp};
    };
    std::vector<bool> used(forms.size(), false);
    BigInt cycles = 0;
    for (size_t i = 0; i < forms.size(); ++i) {
        if (used[i]) continue;
        ++cycles;
        auto f = forms[i];
        for (int guard = 0; guard < 1000000; ++guard) {
            f = rho(f);
            long idx = find_idx(f);
            if (idx >= 0) {
                if (used[idx]) break;
                used[idx] = true;
            }
            if (f == forms[i]) break;
        }
        used[i] = true;
    }
    F.h_F = (F.unit_norm == -1) ? cycles : cycles / 2;
    if (F.h_F == 0) F.h_F = 1;
    return F;
}

RealBall RealQuadField::regulator(mpfr_prec_t prec) const {
    RealBall sd = RealBall::exact_int(disc_F, prec).sqrt();
    RealBall v = (RealBall::exact_int(unit_x, prec) + RealBall::exact_int(unit_y, prec) * sd) /
                 RealBall::exact_int(2, prec);
    return v.log();
}

// ------------------------------------------------------------- embeddings

ComplexBall Embeddings::eval(const NFElement& e, int j) const {
    ComplexBall acc(prec);
    for (int i = 0; i < 4; ++i) {
        if (e.pw[i] == 0) continue;
        ComplexBall c{RealBall::exact_rat(e.pw[i], prec), RealBall(prec)};
        acc += c * root_pw[j][i];
    }
    return acc;
}

// ----------------------------------------------------- rational poly utils

namespace {

using RPoly = std::vector<BigRat>;

void rp_norm(RPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

RPoly rp_from(const ZPoly& f) {
    RPoly r(f.degree() + 1);
    for (int i = 0; i <= f.degree(); ++i) r[i] = BigRat(f[i]);
    return r;
}

RPoly rp_mul(const RPoly& a, const RPoly& b) {
    if (a.empty() || b.empty()) return {};
    RPoly r(a.size() + b.size() - 1, BigRat(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    rp_norm(r);
    return r;
}

RPoly rp_rem(RPoly a, const ZPoly& f) {
    int df = f.degree();
    while (static_cast<int>(a.size()) - 1 >= df && !a.empty()) {
        BigRat top = a.back();
        int shift = static_cast<int>(a.size()) - 1 - df;
        if (top != 0)
            for (int i = 0; i < df; ++i) a[shift + i] -= top * BigRat(f[i]);
        a.pop_back();
        rp_norm(a);
    }
    return a;
}

std::array<BigRat, 4> rp_to4(const RPoly& a) {
    std::array<BigRat, 4> r{};
    for (size_t i = 0; i < a.size() && i < 4; ++i) r[i] = a[i];
    return r;
}

RPoly rp_of4(const std::array<BigRat, 4>& a) {
    RPoly r(a.begin(), a.end());
    rp_norm(r);
    return r;
}

std::pair<BigRat, RPoly> rp_invmod(const RPoly& a_in, const ZPoly& f) {
    RPoly r0 = rp_from(f), r1 = rp_rem(a_in, f);
    RPoly s0 = {}, s1 = {BigRat(1)};
    while (!(r1.size() <= 1)) {
        RPoly rem = r0;
        int d1 = static_cast<int>(r1.size()) - 1;
        RPoly q(std::max<size_t>(1, rem.size() >= r1.size() ? rem.size() - d1 : 1), BigRat(0));
        while (static_cast<int>(rem.size()) - 1 >= d1 && !rem.empty()) {
            BigRat c = rem.back() / r1.back();
            int shift = static_cast<int>(rem.size()) - 1 - d1;
            q[shift] = c;
            for (int i = 0; i <= d1; ++i) rem[shift + i] -= c * r1[i];
            rp_norm(rem);
        }
        rp_norm(q);
        RPoly qs = rp_mul(q, s1);
        RPoly s2(std::max(s0.size(), qs.size()), BigRat(0));
        for (size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
        for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
        rp_norm(s2);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    if (r1.empty()) throw Error("element not invertible");
    return {r1[0], s1};
}

struct OrderLat {
    IntMatrix B;
    BigInt den;
};

IntMatrix hnf_rows(const IntMatrix& m) { return hnf(m.transpose()).transpose(); }

// solve 4x4 real system by partial-pivot elimination; false when singular
bool solve4(double A[4][5]) {
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        double best = 1e-9;
        for (int row = col; row < 4; ++row)
            if (std::abs(A[row][col]) > best) {
                best = std::abs(A[row][col]);
                piv = row;
            }
        if (piv < 0) return false;
        for (int c = 0; c < 5; ++c) std::swap(A[col][c], A[piv][c]);
        for (int row = 0; row < 4; ++row) {
            if (row == col) continue;
            double f = A[row][col] / A[col][col];
            for (int c = col; c < 5; ++c) A[row][c] -= f * A[col][c];
        }
    }
    return true;
}

bool ball_overlap(const ComplexBall& a, const ComplexBall& b) {
    RealBall dre = (a.re - b.re).abs();
    RealBall dim = (a.im - b.im).abs();
    return dre.lo_d() <= a.re.rad_d() + b.re.rad_d() + 1e-300 &&
           dim.lo_d() <= a.im.rad_d() + b.im.rad_d() + 1e-300;
}

}  // namespace

// ------------------------------------------------------------ CMField ops

std::array<BigRat, 4> CMField::mul_pw(const std::array<BigRat, 4>& a,
                                      const std::array<BigRat, 4>& b) const {
    BigRat prod[7];
    for (int i = 0; i < 4; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < 4; ++j) {
            if (b[j] == 0) continue;
            prod[i + j] += a[i] * b[j];
        }
    }
    for (int d = 6; d >= 4; --d) {
        BigRat c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (int i = 0; i < 4; ++i) prod[d - 4 + i] -= c * BigRat(f_[i]);
    }
    return {prod[0], prod[1], prod[2], prod[3]};
}

NFElement CMField::mul(const NFElement& a, const NFElement& b) const {
    NFElement r;
    r.pw = mul_pw(a.pw, b.pw);
    return r;
}

NFElement CMField::apply(const Automorphism& s, const NFElement& a) const {
    RPoly g = rp_of4(s.alpha_image);
    RPoly acc;
    for (int i = 3; i >= 0; --i) {
        acc = rp_rem(rp_mul(acc, g), f_);
        if (a.pw[i] != 0) {
            if (acc.empty()) acc.push_back(BigRat(0));
            acc[0] += a.pw[i];
        }
        rp_norm(acc);
    }
    NFElement r;
    r.pw = rp_to4(acc);
    return r;
}

NFElement CMField::inverse(const NFElement& a) const {
    if (a.is_zero()) throw Error("inverse of zero");
    auto [g, u] = rp_invmod(rp_of4(a.pw), f_);
    NFElement r;
    auto ur = rp_to4(u);
    for (int i = 0; i < 4; ++i) r.pw[i] = ur[i] / g;
    return r;
}

NFElement CMField::pow_elt(const NFElement& a, long e) const {
    NFElement base = a;
    if (e < 0) {
        base = inverse(a);
        e = -e;
    }
    NFElement r = NFElement::one();
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

BigRat CMField::trace(const NFElement& a) const {
    BigRat t = 0;
    for (int i = 0; i < 4; ++i)
        if (a.pw[i] != 0) t += a.pw[i] * power_sums_[i];
    return t;
}

BigRat CMField::norm(const NFElement& a) const {
    auto [A, d] = a.as_int_poly();
    if (A.is_zero()) return BigRat(0);
    BigInt r = resultant(f_, A);
    BigRat out(r);
    out /= BigRat(pow_int(d, 4));
    return out;
}

NFElement CMField::from_integral_coords(const std::array<BigInt, 4>& c) const {
    NFElement r;
    for (int k = 0; k < 4; ++k) {
        if (c[k] == 0) continue;
        for (int t = 0; t < 4; ++t) r.pw[t] += BigRat(c[k]) * basis_.at(k, t);
    }
    return r;
}

std::array<BigRat, 4> CMField::to_basis_coords(const NFElement& a) const {
    std::array<BigRat, 4> out{};
    for (int k = 0; k < 4; ++k)
        for (int t = 0; t < 4; ++t) out[k] += a.pw[t] * basis_inv_.at(t, k);
    return out;
}

bool CMField::is_integral(const NFElement& a) const {
    for (auto& c : to_basis_coords(a))
        if (c.get_den() != 1) return false;
    return true;
}

std::vector<CMType> CMField::cm_types() const {
    return {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
}

std::vector<std::pair<CMType, CMType>> CMField::conjugation_classes() const {
    return {{{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}};
}

QMatrix CMField::trace_dual() const {
    QMatrix T(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            std::array<BigInt, 4> ci{}, cj{};
            ci[i] = 1;
            cj[j] = 1;
            T.at(i, j) = trace(mul(from_integral_coords(ci), from_integral_coords(cj)));
        }
    return T.inverse() * basis_;
}

const Embeddings& CMField::embeddings(mpfr_prec_t prec) const {
    std::lock_guard<std::mutex> lock(*emb_mutex_);
    auto it = emb_cache_.lower_bound(prec);
    if (it != emb_cache_.end()) return *it->second;
    auto emb = std::make_shared<Embeddings>();
    emb->prec = prec;
    auto raw = complex_roots(f_, prec);
    auto conj_of = [&](int i) {
        ComplexBall c = raw[i].conj();
        for (int j = 0; j < 4; ++j)
            if (ball_overlap(raw[j], c)) return j;
        throw PrecisionExhausted("embedding conjugate matching failed");
    };
    int i0 = 0;
    int i1 = conj_of(0);
    const Automorphism& g = auts_[aux_idx_];
    ComplexBall img(prec);
    {
        std::array<ComplexBall, 4> pw{ComplexBall::exact_int(1, 0, prec), raw[i0],
                                      raw[i0] * raw[i0], raw[i0] * raw[i0] * raw[i0]};
        for (int i = 0; i < 4; ++i)
            if (g.alpha_image[i] != 0)
                img += ComplexBall{RealBall::exact_rat(g.alpha_image[i], prec), RealBall(prec)} *
                       pw[i];
    }
    int i2 = -1;
    for (int j = 0; j < 4; ++j) {
        if (j == i0 || j == i1) continue;
        if (ball_overlap(raw[j], img)) {
            i2 = j;
            break;
        }
    }
    if (i2 < 0) throw PrecisionExhausted("sigma-image root matching failed");
    int i3 = conj_of(i2);
    emb->roots = {raw[i0], raw[i1], raw[i2], raw[i3]};
    emb->root_pw.resize(4);
    for (int j = 0; j < 4; ++j) {
        emb->root_pw[j][0] = ComplexBall::exact_int(1, 0, prec);
        for (int k = 1; k < 4; ++k) emb->root_pw[j][k] = emb->root_pw[j][k - 1] * emb->roots[j];
    }
    emb_cache_[prec] = emb;
    return *emb;
}

// ----------------------------------------------------------- construction

CMField CMField::make(const ZPoly& defining, Rng& rng) {
    CMField K;
    K.f_ = defining;
    if (K.f_.degree() != 4 || !K.f_.monic())
        throw Error("CMField: defining polynomial must be monic quartic");
    if (!is_irreducible_z(K.f_)) throw Error("CMField: reducible polynomial");
    {
        auto roots = complex_roots(K.f_, 128);
        for (auto& r : roots)
            if (r.im.contains_zero()) throw NotCM("CMField: field has a real embedding");
    }
    {
        BigRat e1 = -BigRat(K.f_[3]), e2 = BigRat(K.f_[2]), e3 = -BigRat(K.f_[1]),
               e4 = BigRat(K.f_[0]);
        auto& p = K.power_sums_;
        p[0] = 4;
        p[1] = e1;
        p[2] = e1 * p[1] - 2 * e2;
        p[3] = e1 * p[2] - e2 * p[1] + 3 * e3;
        p[4] = e1 * p[3] - e2 * p[2] + e3 * p[1] - 4 * e4;
        for (int k = 5; k < 8; ++k)
            p[k] = e1 * p[k - 1] - e2 * p[k - 2] + e3 * p[k - 3] - e4 * p[k - 4];
    }

    // ---- round-2 maximal order ----
    OrderLat O{IntMatrix::identity(4), BigInt(1)};
    BigInt disc_poly = poly_discriminant(K.f_);
    auto mulpw = [&](const std::array<BigRat, 4>& a, const std::array<BigRat, 4>& b) {
        BigRat prod[7];
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (a[i] != 0 && b[j] != 0) prod[i + j] += a[i] * b[j];
        for (int d = 6; d >= 4; --d) {
            BigRat c = prod[d];
            if (c == 0) continue;
            prod[d] = 0;
            for (int i = 0; i < 4; ++i) prod[d - 4 + i] -= c * BigRat(K.f_[i]);
        }
        return std::array<BigRat, 4>{prod[0], prod[1], prod[2], prod[3]};
    };
    for (auto& [p, e] : factor(disc_poly, rng)) {
        if (e < 2) continue;
        while (true) {
            QMatrix Bq(4, 4);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) Bq.at(i, j) = BigRat(O.B.at(i, j)) / BigRat(O.den);
            QMatrix Binv = Bq.inverse();
            std::array<std::array<std::array<BigInt, 4>, 4>, 4> tab;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    std::array<BigRat, 4> pi{}, pj{};
                    for (int t = 0; t < 4; ++t) {
                        pi[t] = Bq.at(i, t);
                        pj[t] = Bq.at(j, t);
                    }
                    auto pr = mulpw(pi, pj);
                    std::array<BigRat, 4> co{};
                    for (int k = 0; k < 4; ++k)
                        for (int t = 0; t < 4; ++t) co[k] += pr[t] * Binv.at(t, k);
                    for (int t = 0; t < 4; ++t) {
                        if (co[t].get_den() != 1) throw Error("order closure violated");
                        tab[i][j][t] = co[t].get_num();
                    }
                }
            auto vmul = [&](const std::array<BigInt, 4>& a, const std::array<BigInt, 4>& b) {
                std::array<BigInt, 4> r{};
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) {
                        if (a[i] == 0 || b[j] == 0) continue;
                        for (int t = 0; t < 4; ++t) r[t] += a[i] * b[j] * tab[i][j][t];
                    }
                for (auto& v : r) v = mod_floor(v, p);
                return r;
            };
            std::array<BigRat, 4> onepw{BigRat(1), BigRat(0), BigRat(0), BigRat(0)};
            std::array<BigInt, 4> onec;
            {
                std::array<BigRat, 4> co{};
                for (int k = 0; k < 4; ++k)
                    for (int t = 0; t < 4; ++t) co[k] += onepw[t] * Binv.at(t, k);
                for (int t = 0; t < 4; ++t) onec[t] = mod_floor(co[t].get_num(), p);
            }
            auto vpow = [&](std::array<BigInt, 4> base, BigInt ex) {
                std::array<BigInt, 4> r = onec;
                while (ex > 0) {
                    if (mod_floor(ex, 2) == 1) r = vmul(r, base);
                    base = vmul(base, base);
                    ex /= 2;
                }
                return r;
            };
            int m = (p < 4) ? 2 : 1;
            IntMatrix frob(4, 4);
            for (int i = 0; i < 4; ++i) {
                std::array<BigInt, 4> img{};
                img[i] = 1;
                for (int it = 0; it < m; ++it) img = vpow(img, p);
                for (int t = 0; t < 4; ++t) frob.at(t, i) = img[t];
            }
            IntMatrix ker = kernel_mod_p(frob, p);
            IntMatrix rad(4 + ker.cols(), 4);
            for (int i = 0; i < 4; ++i) rad.at(i, i) = p;
            for (int c = 0; c < ker.cols(); ++c)
                for (int t = 0; t < 4; ++t) rad.at(4 + c, t) = ker.at(t, c);
            IntMatrix Ip = hnf_rows(rad);
            QMatrix IpInv = QMatrix::from_int(Ip).inverse();
            IntMatrix bigmat(16, 4);
            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 4; ++j) {
                    std::array<BigInt, 4> prod{};
                    for (int t = 0; t < 4; ++t)
                        for (int u = 0; u < 4; ++u) {
                            if (Ip.at(j, u) == 0) continue;
                            prod[t] += Ip.at(j, u) * tab[i][u][t];
                        }
                    std::array<BigRat, 4> x{};
                    for (int a2 = 0; a2 < 4; ++a2)
                        for (int t = 0; t < 4; ++t) x[a2] += BigRat(prod[t]) * IpInv.at(t, a2);
                    for (int a2 = 0; a2 < 4; ++a2) {
                        if (x[a2].get_den() != 1) throw Error("radical not a module");
                        bigmat.at(4 * j + a2, i) = mod_floor(x[a2].get_num(), p);
                    }
                }
            }
            IntMatrix U = kernel_mod_p(bigmat, p);
            bool grew = false;
            if (U.cols() > 0) {
                IntMatrix newrows(4 + U.cols(), 4);
                for (int i = 0; i < 4; ++i) newrows.at(i, i) = p;
                for (int c = 0; c < U.cols(); ++c)
                    for (int t = 0; t < 4; ++t) newrows.at(4 + c, t) = U.at(t, c);
                IntMatrix Hn = hnf_rows(newrows);
                IntMatrix Bn = Hn * O.B;
                BigInt dn = O.den * p;
                BigInt g = dn;
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) g = gcd(g, Bn.at(i, j));
                if (g > 1) {
                    for (int i = 0; i < 4; ++i)
                        for (int j = 0; j < 4; ++j) Bn.at(i, j) /= g;
                    dn /= g;
                }
                IntMatrix canon = hnf_rows(Bn);
                IntMatrix cur = hnf_rows(O.B.mul_scalar(dn / O.den));
                if (!(canon == cur)) {
                    O.B = canon;
                    O.den = dn;
                    grew = true;
                }
            }
            if (!grew) break;
        }
    }
    K.basis_ = QMatrix(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) K.basis_.at(i, j) = BigRat(O.B.at(i, j)) / BigRat(O.den);
    K.basis_inv_ = K.basis_.inverse();
    {
        QMatrix T(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                std::array<BigRat, 4> pi{}, pj{};
                for (int t = 0; t < 4; ++t) {
                    pi[t] = K.basis_.at(i, t);
                    pj[t] = K.basis_.at(j, t);
                }
                auto pr = K.mul_pw(pi, pj);
                BigRat tr = 0;
                for (int t = 0; t < 4; ++t) tr += pr[t] * K.power_sums_[t];
                T.at(i, j) = tr;
            }
        BigRat d = T.det();
        if (d.get_den() != 1) throw Error("disc not integral");
        K.disc_ = d.get_num();
    }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            std::array<BigRat, 4> pi{}, pj{};
            for (int t = 0; t < 4; ++t) {
                pi[t] = K.basis_.at(i, t);
                pj[t] = K.basis_.at(j, t);
            }
            auto pr = K.mul_pw(pi, pj);
            std::array<BigRat, 4> co{};
            for (int k = 0; k < 4; ++k)
                for (int t = 0; t < 4; ++t) co[k] += pr[t] * K.basis_inv_.at(t, k);
            for (int t = 0; t < 4; ++t) {
                if (co[t].get_den() != 1) throw Error("mult table not integral");
                K.mult_[i][j][t] = co[t].get_num();
            }
        }

    // ---- automorphisms ----
    {
        mpfr_prec_t p = 320;
        auto roots = complex_roots(K.f_, p);
        auto conj_matches = [&](int i, int j) {
            return ball_overlap(roots[j], roots[i].conj());
        };
        int j2 = -1;
        for (int j = 1; j < 4; ++j)
            if (!conj_matches(0, j)) {
                j2 = j;
                break;
            }
        if (j2 < 0) throw Error("no non-conjugate root");
        Automorphism id;
        id.alpha_image = {BigRat(0), BigRat(1), BigRat(0), BigRat(0)};
        id.on_basis = IntMatrix::identity(4);
        id.emb_perm = {0, 1, 2, 3};
        id.order = 1;
        K.auts_.push_back(id);
        double E0[4][2], E2[4][2];
        for (int k = 0; k < 4; ++k) {
            ComplexBall b0(p), b2(p);
            ComplexBall r0p = ComplexBall::exact_int(1, 0, p), r2p = r0p;
            for (int t = 0; t < 4; ++t) {
                ComplexBall coef{RealBall::exact_rat(K.basis_.at(k, t), p), RealBall(p)};
                b0 += coef * r0p;
                b2 += coef * r2p;
                r0p = r0p * roots[0];
                r2p = r2p * roots[j2];
            }
            E0[k][0] = b0.re.mid_d();
            E0[k][1] = b0.im.mid_d();
            E2[k][0] = b2.re.mid_d();
            E2[k][1] = b2.im.mid_d();
        }
        for (int t = 1; t < 4; ++t) {
            for (int s = 0; s < 4; ++s) {
                double A[4][5];
                for (int k = 0; k < 4; ++k) {
                    A[0][k] = E0[k][0];
                    A[1][k] = E0[k][1];
                    A[2][k] = E2[k][0];
                    A[3][k] = E2[k][1];
                }
                A[0][4] = roots[t].re.mid_d();
                A[1][4] = roots[t].im.mid_d();
                A[2][4] = roots[s].re.mid_d();
                A[3][4] = roots[s].im.mid_d();
                if (!solve4(A)) continue;
                std::array<BigInt, 4> c;
                bool ok = true;
                for (int k = 0; k < 4; ++k) {
                    double v = A[k][4] / A[k][k];
                    if (std::abs(v - std::round(v)) > 1e-6 || std::abs(v) > 1e12) {
                        ok = false;
                        break;
                    }
                    c[k] = BigInt(static_cast<long>(std::llround(v)));
                }
                if (!ok) continue;
                NFElement cand = K.from_integral_coords(c);
                auto [G, dG] = cand.as_int_poly();
                ZPoly G2 = (G * G).rem_monic(K.f_);
                ZPoly G3 = (G2 * G).rem_monic(K.f_);
                ZPoly G4 = (G3 * G).rem_monic(K.f_);
                ZPoly test = G4 + G3 * ZPoly::constant(K.f_[3] * dG) +
                             G2 * ZPoly::constant(K.f_[2] * dG * dG) +
                             G * ZPoly::constant(K.f_[1] * dG * dG * dG) +
                             ZPoly::constant(K.f_[0] * dG * dG * dG * dG);
                test = test.rem_monic(K.f_);
                if (!test.is_zero()) continue;
                Automorphism aut;
                aut.alpha_image = cand.pw;
                aut.on_basis = IntMatrix(4, 4);
                bool integral = true;
                for (int i = 0; i < 4 && integral; ++i) {
                    std::array<BigInt, 4> ei{};
                    ei[i] = 1;
                    NFElement im = K.apply(aut, K.from_integral_coords(ei));
                    auto coords = K.to_basis_coords(im);
                    for (int k = 0; k < 4; ++k) {
                        if (coords[k].get_den() != 1) {
                            integral = false;
                            break;
                        }
                        aut.on_basis.at(k, i) = coords[k].get_num();
                    }
                }
                if (!integral || abs(aut.on_basis.det()) != 1) continue;
                bool dup = false;
                for (auto& a2 : K.auts_)
                    if (a2.alpha_image == aut.alpha_image) dup = true;
                if (!dup) K.auts_.push_back(aut);
            }
        }
        if (K.auts_.size() != 4)
            throw NotCyclic("CMField: field is not Galois over Q");
        for (auto& aut : K.auts_) {
            NFElement x;
            x.pw = {BigRat(0), BigRat(1), BigRat(0), BigRat(0)};
            int ord = 0;
            NFElement cur = x;
            do {
                cur = K.apply(aut, cur);
                ++ord;
            } while (!(cur == x) && ord < 5);
            aut.order = ord;
        }
        // identify conj by raw-root matching on root 0
        int conj_root = -1;
        for (int j = 1; j < 4; ++j)
            if (conj_matches(0, j)) conj_root = j;
        for (size_t i = 0; i < K.auts_.size(); ++i) {
            if (K.auts_[i].order != 2) continue;
            NFElement sa;
            sa.pw = K.auts_[i].alpha_image;
            ComplexBall val(p);
            ComplexBall rpow = ComplexBall::exact_int(1, 0, p);
            for (int tdeg = 0; tdeg < 4; ++tdeg) {
                if (sa.pw[tdeg] != 0)
                    val += ComplexBall{RealBall::exact_rat(sa.pw[tdeg], p), RealBall(p)} * rpow;
                rpow = rpow * roots[0];
            }
            if (ball_overlap(roots[conj_root], val)) K.conj_idx_ = static_cast<int>(i);
        }
        if (K.conj_idx_ < 0) throw NotCM("CMField: no complex conjugation automorphism");
        for (size_t i = 0; i < K.auts_.size(); ++i)
            if (K.auts_[i].order == 4) {
                K.gen_idx_ = static_cast<int>(i);
                break;
            }
        // aux generator: any automorphism outside {id, conj}
        for (size_t i = 0; i < K.auts_.size(); ++i)
            if (K.auts_[i].order > 1 && static_cast<int>(i) != K.conj_idx_) {
                K.aux_idx_ = static_cast<int>(i);
                break;
            }
        if (K.aux_idx_ < 0) throw NotCyclic("CMField: automorphism group too small");
        // deterministic generator choice: Im phi(sigma(alpha)) > 0
        for (size_t i = 0; i < K.auts_.size(); ++i) {
            if (K.auts_[i].order != 4) continue;
            NFElement sa;
            sa.pw = K.auts_[i].alpha_image;
            ComplexBall val(p);
            ComplexBall rpow = ComplexBall::exact_int(1, 0, p);
            for (int tdeg = 0; tdeg < 4; ++tdeg) {
                if (sa.pw[tdeg] != 0)
                    val += ComplexBall{RealBall::exact_rat(sa.pw[tdeg], p), RealBall(p)} * rpow;
                rpow = rpow * roots[0];
            }
            if (val.im.sign_certain().value_or(0) > 0) {
                K.gen_idx_ = static_cast<int>(i);
                break;
            }
        }
        if (K.gen_idx_ >= 0) K.aux_idx_ = K.gen_idx_;
    }

    // embedding permutations in the convention ordering
    {
        const Embeddings& E = K.embeddings(320);
        for (auto& aut : K.auts_) {
            NFElement sa;
            sa.pw = aut.alpha_image;
            for (int j = 0; j < 4; ++j) {
                ComplexBall val = E.eval(sa, j);
                int match = -1;
                for (int jj = 0; jj < 4; ++jj)
                    if (ball_overlap(E.roots[jj], val)) {
                        match = jj;
                        break;
                    }
                if (match < 0) throw PrecisionExhausted("emb_perm matching");
                aut.emb_perm[j] = match;
            }
        }
    }

    // ---- real quadratic subfield ----
    {
        IntMatrix S = K.conj().on_basis;
        IntMatrix M = S - IntMatrix::identity(4);
        auto sr = snf(M);
        std::vector<std::array<BigInt, 4>> kerv;
        for (int k = 0; k < 4; ++k) {
            if (sr.d.at(k, k) != 0) continue;
            std::array<BigInt, 4> v;
            for (int i = 0; i < 4; ++i) v[i] = sr.right.at(i, k);
            kerv.push_back(v);
        }
        if (kerv.size() != 2) throw NotCM("conj fixed lattice has wrong rank");
        auto one_coords = K.to_basis_coords(NFElement::one());
        BigRat a, b;
        {
            bool done = false;
            for (int r1 = 0; r1 < 4 && !done; ++r1)
                for (int r2 = r1 + 1; r2 < 4 && !done; ++r2) {
                    BigRat det = BigRat(kerv[0][r1]) * BigRat(kerv[1][r2]) -
                                 BigRat(kerv[0][r2]) * BigRat(kerv[1][r1]);
                    if (det == 0) continue;
                    a = (one_coords[r1] * BigRat(kerv[1][r2]) -
                         one_coords[r2] * BigRat(kerv[1][r1])) /
                        det;
                    b = (BigRat(kerv[0][r1]) * one_coords[r2] -
                         BigRat(kerv[0][r2]) * one_coords[r1]) /
                        det;
                    done = true;
                }
            if (!done) throw Error("degenerate fixed lattice");
        }
        if (a.get_den() != 1 || b.get_den() != 1) throw Error("1 not in fixed lattice");
        BigInt ai = a.get_num(), bi = b.get_num();
        BigInt s, t;
        BigInt g = xgcd(ai, bi, s, t);
        if (!(g == 1 || g == -1)) throw Error("1 not primitive in fixed lattice");
        std::array<BigInt, 4> wco;
        for (int i = 0; i < 4; ++i) wco[i] = -t * kerv[0][i] + s * kerv[1][i];
        NFElement w = K.from_integral_coords(wco);
        BigRat tw = K.trace(w) / 2;
        NFElement wbar = K.apply(K.aux_gen(), w);
        NFElement prod = K.mul(w, wbar);
        if (!(prod.pw[1] == 0 && prod.pw[2] == 0 && prod.pw[3] == 0))
            throw Error("w*sigma(w) not rational");
        BigRat nw = prod.pw[0];
        if (tw.get_den() != 1 || nw.get_den() != 1) throw Error("w char data not integral");
        BigInt disc_F = tw.get_num() * tw.get_num() - 4 * nw.get_num();
        if (disc_F <= 0) throw NotCM("fixed subfield not real");
        K.F_ = real_quad_data(disc_F);
        NFElement sq = w + w - NFElement::from_int(tw.get_num());
        {
            const Embeddings& E = K.embeddings(320);
            ComplexBall v = E.eval(sq, 0);
            auto sg = v.re.sign_certain();
            if (!sg) throw PrecisionExhausted("sqrtDF sign");
            if (*sg < 0) sq = -sq;
        }
        K.sqrtDF_ = sq;
        NFElement u;
        for (int i = 0; i < 4; ++i)
            u.pw[i] = ((i == 0 ? BigRat(K.F_.unit_x) : BigRat(0)) +
                       BigRat(K.F_.unit_y) * K.sqrtDF_.pw[i]) /
                      2;
        K.unitF_ = u;
        if (K.norm(u) != 1) throw Error("fundamental unit norm check");
        if (!K.is_integral(u)) throw Error("fundamental unit not integral");
    }

    // ---- torsion units ----
    {
        K.w_ = 2;
        K.zeta_ = NFElement::from_int(-1);
        struct Cand {
            unsigned m;
            long dd;
        };
        for (auto [m, dd] : {Cand{5, 125}, Cand{8, 256}, Cand{12, 144}}) {
            if (K.disc_ != dd) continue;
            ZPoly phim = ZPoly::cyclotomic(m);
            const Embeddings& E = K.embeddings(320);
            bool found = false;
            for (unsigned k1 = 1; k1 < m && !found; ++k1) {
                if (std::gcd(k1, m) != 1) continue;
                for (unsigned k2 = 1; k2 < m && !found; ++k2) {
                    if (std::gcd(k2, m) != 1) continue;
                    double t1 = 2.0 * M_PI * k1 / m, t2 = 2.0 * M_PI * k2 / m;
                    double A[4][5];
                    for (int k = 0; k < 4; ++k) {
                        std::array<BigInt, 4> ei{};
                        ei[k] = 1;
                        NFElement bk = K.from_integral_coords(ei);
                        ComplexBall v0 = E.eval(bk, 0), v2 = E.eval(bk, 2);
                        A[0][k] = v0.re.mid_d();
                        A[1][k] = v0.im.mid_d();
                        A[2][k] = v2.re.mid_d();
                        A[3][k] = v2.im.mid_d();
                    }
                    A[0][4] = std::cos(t1);
                    A[1][4] = std::sin(t1);
                    A[2][4] = std::cos(t2);
                    A[3][4] = std::sin(t2);
                    if (!solve4(A)) continue;
                    std::array<BigInt, 4> c;
                    bool ok = true;
                    for (int k = 0; k < 4; ++k) {
                        double v = A[k][4] / A[k][k];
                        if (std::abs(v - std::round(v)) > 1e-6 || std::abs(v) > 1e9) {
                            ok = false;
                            break;
                        }
                        c[k] = BigInt(static_cast<long>(std::llround(v)));
                    }
                    if (!ok) continue;
                    NFElement z = K.from_integral_coords(c);
                    auto [G, dG] = z.as_int_poly();
                    if (dG != 1) continue;
                    ZPoly comp = phim.compose_mod(G, K.f_);
                    if (!comp.is_zero()) continue;
                    K.w_ = (m % 2 == 1) ? static_cast<int>(2 * m) : static_cast<int>(m);
                    K.zeta_ = (m % 2 == 1) ? -z : z;
                    found = true;
                }
            }
        }
    }

    return K;
}

} // namespace g2cm
