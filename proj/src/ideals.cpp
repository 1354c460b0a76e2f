#include "g2cm/ideals.hpp"

#include <algorithm>

namespace g2cm {

namespace {

IntMatrix hnf_rows(const IntMatrix& m) { return hnf(m.transpose()).transpose(); }

void normalize(FracIdeal& a) {
    BigInt g = a.den;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g = gcd(g, a.lat.at(i, j));
    if (g > 1) {
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) a.lat.at(i, j) /= g;
        a.den /= g;
    }
}

std::array<BigInt, 4> coord_mul_basis(const CMField& K, const std::array<BigInt, 4>& c, int k) {
    std::array<BigInt, 4> r{};
    const auto& T = K.mult_table();
    for (int i = 0; i < 4; ++i) {
        if (c[i] == 0) continue;
        for (int t = 0; t < 4; ++t) r[t] += c[i] * T[i][k][t];
    }
    return r;
}

std::array<BigInt, 4> coord_mul(const CMField& K, const std::array<BigInt, 4>& a,
                                const std::array<BigInt, 4>& b) {
    std::array<BigInt, 4> r{};
    const auto& T = K.mult_table();
    for (int i = 0; i < 4; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < 4; ++j) {
            if (b[j] == 0) continue;
            for (int t = 0; t < 4; ++t) r[t] += a[i] * b[j] * T[i][j][t];
        }
    }
    return r;
}

}  // namespace

FracIdeal ideal_one(const CMField& K) {
    (void)K;
    return {IntMatrix::identity(4), 1};
}

FracIdeal ideal_from_gens(const CMField& K, const std::vector<NFElement>& gens) {
    BigInt den = 1;
    std::vector<std::array<BigRat, 4>> co;
    for (auto& g : gens) {
        co.push_back(K.to_basis_coords(g));
        for (auto& q : co.back()) den = lcm(den, BigInt(q.get_den()));
    }
    IntMatrix rows(static_cast<int>(gens.size()) * 4, 4);
    for (size_t g = 0; g < gens.size(); ++g) {
        std::array<BigInt, 4> c;
        for (int t = 0; t < 4; ++t) {
            BigRat v = co[g][t] * BigRat(den);
            c[t] = v.get_num();
        }
        for (int k = 0; k < 4; ++k) {
            auto prod = coord_mul_basis(K, c, k);
            for (int t = 0; t < 4; ++t) rows.at(static_cast<int>(g) * 4 + k, t) = prod[t];
        }
    }
    FracIdeal a{hnf_rows(rows), den};
    normalize(a);
    return a;
}

FracIdeal ideal_principal(const CMField& K, const NFElement& x) {
    return ideal_from_gens(K, {x});
}

FracIdeal ideal_two_gen(const CMField& K, const BigInt& p, const NFElement& g) {
    auto co = K.to_basis_coords(g);
    std::array<BigInt, 4> c;
    for (int t = 0; t < 4; ++t) {
        if (co[t].get_den() != 1) throw Error("ideal_two_gen: generator not integral");
        c[t] = co[t].get_num();
    }
    IntMatrix rows(8, 4);
    for (int i = 0; i < 4; ++i) rows.at(i, i) = p;
    for (int k = 0; k < 4; ++k) {
        auto prod = coord_mul_basis(K, c, k);
        for (int t = 0; t < 4; ++t) rows.at(4 + k, t) = prod[t];
    }
    FracIdeal a{hnf_rows(rows), 1};
    normalize(a);
    return a;
}

FracIdeal ideal_mul(const CMField& K, const FracIdeal& a, const FracIdeal& b) {
    IntMatrix rows(16, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            std::array<BigInt, 4> ra, rb;
            for (int t = 0; t < 4; ++t) {
                ra[t] = a.lat.at(i, t);
                rb[t] = b.lat.at(j, t);
            }
            auto prod = coord_mul(K, ra, rb);
            for (int t = 0; t < 4; ++t) rows.at(4 * i + j, t) = prod[t];
        }
    FracIdeal r{hnf_rows(rows), a.den * b.den};
    normalize(r);
    return r;
}

FracIdeal ideal_pow(const CMField& K, const FracIdeal& a, long e) {
    FracIdeal base = a;
    if (e < 0) {
        base = ideal_inv(K, a);
        e = -e;
    }
    FracIdeal r = ideal_one(K);
    while (e > 0) {
        if (e & 1) r = ideal_mul(K, r, base);
        base = ideal_mul(K, base, base);
        e >>= 1;
    }
    return r;
}

FracIdeal ideal_apply(const CMField& K, const Automorphism& s, const FracIdeal& a) {
    (void)K;
    IntMatrix rows(4, 4);
    for (int i = 0; i < 4; ++i) {
        std::array<BigInt, 4> c;
        for (int t = 0; t < 4; ++t) c[t] = a.lat.at(i, t);
        for (int t = 0; t < 4; ++t) {
            BigInt v = 0;
            for (int k = 0; k < 4; ++k) v += s.on_basis.at(t, k) * c[k];
            rows.at(i, t) = v;
        }
    }
    FracIdeal r{hnf_rows(rows), a.den};
    normalize(r);
    return r;
}

BigRat ideal_norm(const CMField& K, const FracIdeal& a) {
    (void)K;
    BigInt d = abs(a.lat.det());
    BigRat r(d);
    r /= BigRat(pow_int(a.den, 4));
    return r;
}

bool ideal_is_integral(const FracIdeal& a) { return a.den == 1; }

bool ideal_contains(const CMField& K, const FracIdeal& a, const NFElement& x) {
    auto co = K.to_basis_coords(x);
    QMatrix L = QMatrix::from_int(a.lat);
    std::vector<BigRat> b(4);
    for (int t = 0; t < 4; ++t) b[t] = co[t] * BigRat(a.den);
    auto y = L.transpose().solve(b);
    for (auto& v : y)
        if (v.get_den() != 1) return false;
    return true;
}

FracIdeal ideal_inv(const CMField& K, const FracIdeal& a) {
    FracIdeal prod = ideal_one(K);
    for (const auto& s : K.automorphisms()) {
        if (s.order == 1) continue;
        prod = ideal_mul(K, prod, ideal_apply(K, s, a));
    }
    BigRat n = ideal_norm(K, a);
    FracIdeal r = prod;
    r.den *= n.get_num();
    if (n.get_den() != 1) r.lat = r.lat.mul_scalar(n.get_den());
    r.lat = hnf_rows(r.lat);
    normalize(r);
    return r;
}

FracIdeal different_ideal(const CMField& K) {
    QMatrix dual = K.trace_dual();
    std::vector<NFElement> gens;
    for (int i = 0; i < 4; ++i) {
        NFElement e;
        for (int t = 0; t < 4; ++t) e.pw[t] = dual.at(i, t);
        gens.push_back(e);
    }
    FracIdeal dinv = ideal_from_gens(K, gens);
    return ideal_inv(K, dinv);
}

BigRat minkowski_bound(const CMField& K) {
    RealBall pi = RealBall::const_pi(96);
    RealBall b = RealBall::exact_int(3, 96) / (RealBall::exact_int(2, 96) * pi * pi) *
                 RealBall::exact_int(abs(K.disc()), 96).sqrt();
    mpfr_t hi;
    mpfr_init2(hi, 128);
    b.get_hi(hi);
    BigRat q;
    mpfr_get_q(q.get_mpq_t(), hi);
    mpfr_clear(hi);
    return q;
}

std::vector<NFElement> short_elements(const CMField& K, const FracIdeal& a, const BigRat& bound) {
    QMatrix G(4, 4);
    std::vector<NFElement> rows(4);
    for (int i = 0; i < 4; ++i) {
        std::array<BigInt, 4> c;
        for (int t = 0; t < 4; ++t) c[t] = a.lat.at(i, t);
        rows[i] = K.from_integral_coords(c);
        for (int t = 0; t < 4; ++t) rows[i].pw[t] /= BigRat(a.den);
    }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            G.at(i, j) = K.trace(K.mul(rows[i], K.conj_elt(rows[j])));
    BigRat D[4];
    BigRat L[4][4];
    {
        QMatrix g = G;
        for (int k = 0; k < 4; ++k) {
            D[k] = g.at(k, k);
            if (D[k] <= 0) throw Error("trace form not positive definite");
            for (int i = 0; i < 4; ++i) L[i][k] = 0;
            L[k][k] = 1;
            for (int i = k + 1; i < 4; ++i) L[i][k] = g.at(i, k) / D[k];
            for (int i = k + 1; i < 4; ++i)
                for (int j = k + 1; j < 4; ++j)
                    g.at(i, j) = g.at(i, j) - L[i][k] * L[j][k] * D[k];
        }
    }
    auto isqrt_rat_up = [](const BigRat& q) -> BigInt {
        if (q <= 0) return 0;
        BigInt n = q.get_num(), d = q.get_den();
        return isqrt(n * d) / d + 1;
    };
    // Q(v) = sum_k D[k] * (v_k + sum_{j>k} L[j][k] v_j)^2
    std::vector<NFElement> out;
    BigInt b3 = isqrt_rat_up(bound / D[3]);
    for (BigInt x3 = -b3; x3 <= b3; ++x3) {
        BigRat t3(x3);
        BigRat q3 = D[3] * t3 * t3;
        if (q3 > bound) continue;
        BigRat rem2 = bound - q3;
        BigRat off2 = L[3][2] * t3;
        BigInt s2 = isqrt_rat_up(rem2 / D[2]);
        BigInt c2 = round_rat(off2);
        for (BigInt x2 = -s2 - 1 - c2; x2 <= s2 + 1 - c2; ++x2) {
            BigRat u2 = BigRat(x2) + off2;
            BigRat q2 = D[2] * u2 * u2;
            if (q2 > rem2) continue;
            BigRat rem1 = rem2 - q2;
            BigRat off1 = L[3][1] * t3 + L[2][1] * BigRat(x2);
            BigInt s1 = isqrt_rat_up(rem1 / D[1]);
            BigInt c1 = round_rat(off1);
            for (BigInt x1 = -s1 - 1 - c1; x1 <= s1 + 1 - c1; ++x1) {
                BigRat u1 = BigRat(x1) + off1;
                BigRat q1 = D[1] * u1 * u1;
                if (q1 > rem1) continue;
                BigRat rem0 = rem1 - q1;
                BigRat off0 = L[3][0] * t3 + L[2][0] * BigRat(x2) + L[1][0] * BigRat(x1);
                BigInt s0 = isqrt_rat_up(rem0 / D[0]);
                BigInt c0 = round_rat(off0);
                for (BigInt x0 = -s0 - 1 - c0; x0 <= s0 + 1 - c0; ++x0) {
                    BigRat u0 = BigRat(x0) + off0;
                    BigRat q0 = D[0] * u0 * u0;
                    if (q0 > rem0) continue;
                    if (x0 == 0 && x1 == 0 && x2 == 0 && x3 == 0) continue;
                    NFElement x = NFElement::zero();
                    const BigInt xs[4] = {x0, x1, x2, x3};
                    for (int i = 0; i < 4; ++i) {
                        if (xs[i] == 0) continue;
                        for (int t = 0; t < 4; ++t) x.pw[t] += BigRat(xs[i]) * rows[i].pw[t];
                    }
                    out.push_back(x);
                }
            }
        }
    }
    return out;
}

std::optional<NFElement> ideal_principal_gen(const CMField& K, const FracIdeal& a) {
    BigRat N = ideal_norm(K, a);
    const RealQuadField& F = K.subfield_F();
    BigRat unit_bound;
    if (F.unit_norm == 1)
        unit_bound = BigRat(abs(F.unit_x));
    else
        unit_bound = BigRat(F.unit_y * (isqrt(F.disc_F) + 1));
    if (unit_bound < 2) unit_bound = 2;
    BigInt num = N.get_num(), den = N.get_den();
    BigRat sqrtN_up(isqrt(num * den) + 1, den);
    sqrtN_up.canonicalize();
    BigRat bound = 2 * unit_bound * sqrtN_up + 1;
    for (auto& x : short_elements(K, a, bound)) {
        BigRat nx = K.norm(x);
        if (nx == N || nx == -N) return x;
    }
    return std::nullopt;
}

std::vector<PrimeIdeal> split_prime(const CMField& K, const BigInt& p, Rng& rng) {
    if (!is_probable_prime(p)) throw CompositeModulus("split_prime: p not prime");
    BigInt idx2 = poly_discriminant(K.poly()) / K.disc();
    bool index_div = mod_floor(idx2, p) == 0;
    std::vector<PrimeIdeal> out;
    if (!index_div) {
        auto fac = factor_mod_p(K.poly(), p, 0);
        for (auto& [q, e] : fac) {
            ZPoly qr = q.rem_monic(K.poly());  // degree-4 factor (inert) -> q - f
            NFElement g;
            for (int i = 0; i <= qr.degree(); ++i) g.pw[i] = BigRat(qr.coeff(i));
            out.push_back({ideal_two_gen(K, p, g), p, e, q.degree()});
        }
    } else {
        // index divisor: split the F_p-algebra O/pO directly. Maximal ideals are
        // pO + nilradical + q(y) O for q the irreducible factors of the minimal
        // polynomial of an element y generating the semisimple quotient.
        const auto& T = K.mult_table();
        auto vmul = [&](const std::array<BigInt, 4>& a, const std::array<BigInt, 4>& b) {
            std::array<BigInt, 4> r{};
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    if (a[i] == 0 || b[j] == 0) continue;
                    for (int t = 0; t < 4; ++t) r[t] += a[i] * b[j] * T[i][j][t];
                }
            for (auto& v : r) v = mod_floor(v, p);
            return r;
        };
        auto one_coords = K.to_basis_coords(NFElement::one());
        std::array<BigInt, 4> onec;
        for (int t = 0; t < 4; ++t) onec[t] = mod_floor(one_coords[t].get_num(), p);
        // nilradical of O/pO: kernel of the Frobenius iterate x -> x^(p^m), p^m >= 4
        auto vpow0 = [&](std::array<BigInt, 4> base, BigInt e) {
            auto r = onec;
            while (e > 0) {
                if (mod_floor(e, 2) == 1) r = vmul(r, base);
                base = vmul(base, base);
                e /= 2;
            }
            return r;
        };
        int mfr = (p < 4) ? 2 : 1;
        IntMatrix frob(4, 4);
        for (int i = 0; i < 4; ++i) {
            std::array<BigInt, 4> img{};
            img[i] = 1;
            for (int it = 0; it < mfr; ++it) img = vpow0(img, p);
            for (int t = 0; t < 4; ++t) frob.at(t, i) = img[t];
        }
        IntMatrix nil = kernel_mod_p(frob, p);
        int red_dim = 4 - nil.cols();
        int tries = 0;
        while (out.empty() && tries < 512) {
            ++tries;
            std::array<BigInt, 4> y{};
            for (auto& v : y) v = rng.big_below(p);
            std::vector<std::array<BigInt, 4>> pows;
            pows.push_back(onec);
            for (int k = 1; k <= 4; ++k) pows.push_back(vmul(pows.back(), y));
            ZPoly minpoly;
            for (int d = 1; d <= 4 && minpoly.is_zero(); ++d) {
                IntMatrix M(4, d + 1);
                for (int c = 0; c <= d; ++c)
                    for (int t = 0; t < 4; ++t) M.at(t, c) = pows[c][t];
                IntMatrix ker = kernel_mod_p(M, p);
                for (int c = 0; c < ker.cols(); ++c) {
                    if (ker.at(d, c) != 0) {
                        std::vector<BigInt> co(d + 1);
                        for (int i = 0; i <= d; ++i) co[i] = ker.at(i, c);
                        BigInt inv = *inv_mod(co[d], p);
                        for (auto& v : co) v = mod_floor(v * inv, p);
                        minpoly = ZPoly(std::move(co));
                        break;
                    }
                }
            }
            if (minpoly.is_zero()) continue;
            auto fac = factor_mod_p(minpoly, p, rng.u64());
            // y must generate the semisimple quotient: distinct-factor degrees sum
            int degsum = 0;
            for (auto& [q, mult] : fac) degsum += q.degree();
            if (degsum != red_dim) continue;
            std::vector<PrimeIdeal> cand;
            bool okset = true;
            int fdeg = -1;
            for (auto& [q, mult] : fac) {
                std::array<BigInt, 4> g{};
                for (int i = q.degree(); i >= 0; --i) {
                    g = vmul(g, y);
                    BigInt ci = mod_floor(q.coeff(i), p);
                    for (int t = 0; t < 4; ++t) g[t] = mod_floor(g[t] + ci * onec[t], p);
                }
                // P = pO + nil + q(y) * O
                IntMatrix rows(4 + nil.cols() + 4, 4);
                for (int i = 0; i < 4; ++i) rows.at(i, i) = p;
                for (int c = 0; c < nil.cols(); ++c)
                    for (int t = 0; t < 4; ++t) rows.at(4 + c, t) = nil.at(t, c);
                for (int k = 0; k < 4; ++k) {
                    std::array<BigInt, 4> ek{};
                    ek[k] = 1;
                    auto prod = vmul(g, ek);
                    for (int t = 0; t < 4; ++t)
                        rows.at(4 + nil.cols() + k, t) = prod[t];
                }
                FracIdeal P{hnf(rows.transpose()).transpose(), 1};
                BigRat n = ideal_norm(K, P);
                if (n == 1) continue;
                BigInt nn = n.get_num();
                int fq = 0;
                while (mod_floor(nn, p) == 0) {
                    nn /= p;
                    ++fq;
                }
                if (nn != 1) {
                    okset = false;
                    break;
                }
                if (fdeg < 0) fdeg = fq;
                if (fq != fdeg) {
                    okset = false;
                    break;
                }
                cand.push_back({P, p, 0, fq});
            }
            if (!okset || cand.empty()) continue;
            std::vector<PrimeIdeal> uniq;
            for (auto& c : cand) {
                bool dup = false;
                for (auto& u : uniq)
                    if (u.I == c.I) dup = true;
                if (!dup) uniq.push_back(c);
            }
            int g = static_cast<int>(uniq.size());
            if (4 % (fdeg * g) != 0) continue;
            int e = 4 / (fdeg * g);
            for (auto& u : uniq) u.e = e;
            FracIdeal prod = ideal_one(K);
            for (auto& u : uniq) prod = ideal_mul(K, prod, ideal_pow(K, u.I, e));
            FracIdeal pid = ideal_principal(K, NFElement::from_int(p));
            if (prod == pid) out = uniq;
        }
        if (out.empty()) throw Error("split_prime: algebra splitting failed");
        return out;
    }
    FracIdeal prod = ideal_one(K);
    for (auto& P : out) prod = ideal_mul(K, prod, ideal_pow(K, P.I, P.e));
    FracIdeal pid = ideal_principal(K, NFElement::from_int(p));
    if (!(prod == pid)) throw Error("split_prime: factorization verification failed");
    return out;
}

} // namespace g2cm
