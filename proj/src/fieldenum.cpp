#include "g2cm/fieldenum.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace g2cm {

namespace {

// cyclic decomposition of (Z/n)^*: list of (generator, order)
std::vector<std::pair<BigInt, BigInt>> unit_group(const BigInt& n, Rng& rng) {
    std::vector<std::pair<BigInt, BigInt>> gens;
    for (auto& [p, e] : factor(n, rng)) {
        BigInt pe = pow_int(p, static_cast<unsigned long>(e));
        BigInt rest = n / pe;
        auto lift = [&](const BigInt& g) {
            if (rest == 1) return mod_floor(g, n);
            BigInt s, t;
            xgcd(pe, rest, s, t);
            return mod_floor(g * rest * t + pe * s, n);
        };
        if (p == 2) {
            if (e == 1) continue;
            gens.emplace_back(lift(pe - 1), 2);
            if (e >= 3) gens.emplace_back(lift(5), pow_int(2, e - 2));
        } else {
            BigInt order = pe - pe / p;
            auto ofac = factor(order, rng);
            for (BigInt g = 2;; ++g) {
                if (mod_floor(g, p) == 0) continue;
                bool prim = true;
                for (auto& [q, qe] : ofac)
                    if (powmod(g, order / q, pe) == 1) {
                        prim = false;
                        break;
                    }
                if (prim) {
                    gens.emplace_back(lift(g), order);
                    break;
                }
            }
        }
    }
    return gens;
}

}  // namespace

std::vector<QuarticCharacter> enumerate_characters(const BigInt& B, const BigInt& disc_F) {
    std::vector<QuarticCharacter> out;
    Rng rng(0);
    BigInt fmax = isqrt(B / disc_F);
    for (BigInt f = 3; f <= fmax; ++f) {
        auto gens = unit_group(f, rng);
        size_t ng = gens.size();
        if (ng == 0) continue;
        std::vector<std::vector<int>> choices(ng);
        for (size_t i = 0; i < ng; ++i) {
            BigInt g4 = gcd(gens[i].second, BigInt(4));
            int step = static_cast<int>(BigInt(4 / g4).get_ui());
            for (int e = 0; e < 4; e += step) choices[i].push_back(e);
        }
        std::vector<size_t> idx(ng, 0);
        std::vector<BigInt> ords(ng);
        for (size_t i = 0; i < ng; ++i) ords[i] = gens[i].second;
        while (true) {
            std::vector<int> tab(f.get_ui(), -1);
            std::function<void(size_t, BigInt, long)> walk = [&](size_t i, BigInt a, long exp4) {
                if (i == ng) {
                    tab[mod_floor(a, f).get_ui()] = static_cast<int>(((exp4 % 4) + 4) % 4);
                    return;
                }
                BigInt cur = 1;
                for (BigInt k = 0; k < ords[i]; ++k) {
                    walk(i + 1, mod_floor(a * cur, f),
                         exp4 + static_cast<long>(k.get_ui()) * choices[i][idx[i]]);
                    cur = mod_floor(cur * gens[i].first, f);
                }
            };
            walk(0, 1, 0);
            bool has_order4 = false;
            for (int v : tab)
                if (v == 1 || v == 3) has_order4 = true;
            bool odd = f > 2 && tab[BigInt(f - 1).get_ui()] == 2;
            bool square_ok = true;
            if (has_order4 && odd) {
                for (BigInt a = 1; a < f && square_ok; ++a) {
                    int v = tab[a.get_ui()];
                    if (v < 0) continue;
                    int sq = (2 * v) % 4;
                    int want = kronecker(disc_F, a);
                    if ((sq == 0 && want != 1) || (sq == 2 && want != -1)) square_ok = false;
                }
            }
            bool primitive = true;
            if (has_order4 && odd && square_ok) {
                for (auto& [q, qe] : factor(f, rng)) {
                    BigInt sub = f / q;
                    bool nontriv = false;
                    for (BigInt a = 1 + sub; a < f; a += sub)
                        if (gcd(a, f) == 1 && tab[mod_floor(a, f).get_ui()] != 0) nontriv = true;
                    if (!nontriv) {
                        primitive = false;
                        break;
                    }
                }
            }
            if (has_order4 && odd && square_ok && primitive) {
                std::vector<int> tab3(tab);
                for (auto& v : tab3)
                    if (v > 0) v = (4 - v) & 3;
                if (tab <= tab3) out.push_back({f, tab, disc_F * f * f, disc_F});
            }
            size_t i = 0;
            while (i < ng) {
                if (++idx[i] < choices[i].size()) break;
                idx[i] = 0;
                ++i;
            }
            if (i == ng) break;
        }
    }
    std::sort(out.begin(), out.end(), [](const QuarticCharacter& a, const QuarticCharacter& b) {
        if (a.disc_K != b.disc_K) return a.disc_K < b.disc_K;
        return a.values < b.values;
    });
    return out;
}

ZPoly defining_poly_from_character(const QuarticCharacter& chi, mpfr_prec_t prec) {
    unsigned long f = chi.conductor.get_ui();
    std::vector<unsigned long> kernel;
    for (unsigned long a = 1; a < f; ++a)
        if (chi.values[a] == 0) kernel.push_back(a);
    std::vector<unsigned long> reps;
    for (int want = 0; want < 4; ++want)
        for (unsigned long a = 1; a < f; ++a)
            if (chi.values[a] == want) {
                reps.push_back(a);
                break;
            }
    if (reps.size() != 4) throw VerificationFailed("character does not have order 4");
    for (mpfr_prec_t p = prec; p <= (1 << 16); p *= 2) {
        RealBall pi = RealBall::const_pi(p);
        std::vector<ComplexBall> eta;
        for (unsigned long c : reps) {
            ComplexBall s(p);
            for (unsigned long a : kernel) {
                unsigned long k = (c * a) % f;
                BigRat frac(2 * BigInt(k), BigInt(f));
                frac.canonicalize();
                RealBall ang = pi * RealBall::exact_rat(frac, p);
                s += ComplexBall{ang.cos(), ang.sin()};
            }
            eta.push_back(s);
        }
        ComplexBall e1 = eta[0] + eta[1] + eta[2] + eta[3];
        ComplexBall e2 = eta[0] * eta[1] + eta[0] * eta[2] + eta[0] * eta[3] +
                         eta[1] * eta[2] + eta[1] * eta[3] + eta[2] * eta[3];
        ComplexBall e3 = eta[0] * eta[1] * eta[2] + eta[0] * eta[1] * eta[3] +
                         eta[0] * eta[2] * eta[3] + eta[1] * eta[2] * eta[3];
        ComplexBall e4 = eta[0] * eta[1] * eta[2] * eta[3];
        std::array<ComplexBall, 4> es{e1, e2, e3, e4};
        std::array<BigInt, 4> coeffs;
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i) {
            if (es[i].rad_d() > 0.25 || !es[i].im.contains_zero()) {
                ok = false;
                break;
            }
            BigInt c = es[i].re.mid_round();
            if (!es[i].re.contains_int(c)) {
                ok = false;
                break;
            }
            coeffs[i] = c;
        }
        if (!ok) continue;
        ZPoly poly(std::vector<BigInt>{coeffs[3], -coeffs[2], coeffs[1], -coeffs[0], BigInt(1)});
        if (!is_irreducible_z(poly)) throw VerificationFailed("period polynomial reducible");
        Rng rng(0);
        CMField K = CMField::make(poly, rng);
        if (K.disc() != chi.disc_K) throw VerificationFailed("period field has wrong discriminant");
        if (!K.is_cyclic()) throw VerificationFailed("period field not cyclic");
        if (K.subfield_F().disc_F != chi.disc_F)
            throw VerificationFailed("period field has wrong real subfield");
        return poly;
    }
    throw PrecisionExhausted("defining_poly_from_character");
}

std::vector<EnumeratedField> enumerate_fields(const BigInt& B, const BigInt& disc_F) {
    std::vector<EnumeratedField> out;
    for (auto& chi : enumerate_characters(B, disc_F)) {
        ZPoly p = defining_poly_from_character(chi);
        out.push_back({chi, p, chi.disc_K});
    }
    for (size_t i = 0; i + 1 < out.size(); ++i)
        if (out[i].disc_K == out[i + 1].disc_K)
            throw VerificationFailed("duplicate field discriminants in enumeration");
    return out;
}

} // namespace g2cm
