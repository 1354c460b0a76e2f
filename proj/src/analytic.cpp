#include "g2cm/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace g2cm {

namespace {

// local counts: lc[m] = number of ideals of norm p^m above p, m*log(p) <= log X
std::vector<std::uint64_t> local_counts(const std::vector<std::pair<int, int>>& ef, int mmax) {
    // ideals above p: product over primes P_i with residue degree f_i, any exponent
    std::vector<std::uint64_t> lc(mmax + 1, 0);
    lc[0] = 1;
    for (auto& [e, f] : ef) {
        (void)e;
        std::vector<std::uint64_t> nl(mmax + 1, 0);
        for (int m = 0; m <= mmax; ++m) {
            if (lc[m] == 0) continue;
            for (int k = 0; m + k * f <= mmax; ++k) nl[m + k * f] += lc[m];
        }
        lc = nl;
    }
    return lc;
}

}  // namespace

IdealCountTable ideal_counts(const CMField& K, long X) {
    IdealCountTable t;
    t.cutoff = X;
    t.counts.assign(X + 1, 0);
    t.counts[1] = 1;
    auto primes = primes_below(static_cast<std::uint32_t>(X) + 1);
    BigInt idx2 = poly_discriminant(K.poly()) / K.disc();
    for (auto p : primes) {
        std::vector<std::pair<int, int>> ef;
        if (mod_floor(idx2, p) != 0) {
            // splitting mirrors the defining polynomial away from the index
            for (auto& [q, e] : factor_mod_p(K.poly(), p, 0)) ef.emplace_back(e, q.degree());
        } else {
            Rng rng(p);
            for (auto& P : split_prime(K, BigInt(p), rng)) ef.emplace_back(P.e, P.f);
        }
        int mmax = 0;
        std::uint64_t pw = 1;
        while (pw <= static_cast<std::uint64_t>(X) / p) {
            pw *= p;
            ++mmax;
        }
        auto lc = local_counts(ef, mmax);
        // multiplicative sieve: for n coprime-ish ascending, multiply in powers of p
        // iterate existing entries with n not divisible by p
        for (long n = X; n >= 1; --n) {
            if (t.counts[n] == 0 || n % p == 0) continue;
            std::uint64_t q = p;
            for (int m = 1; m <= mmax; ++m) {
                long idx = n * static_cast<long>(q);
                if (idx > X) break;
                t.counts[idx] += t.counts[n] * lc[m];
                q *= p;
            }
        }
    }
    return t;
}

int ClassedCounts::index_of(const ClassGroup& G, const std::vector<BigInt>& label) const {
    auto it = std::lower_bound(labels.begin(), labels.end(), label);
    if (it == labels.end() || *it != label) return -1;
    return static_cast<int>(it - labels.begin());
}

ClassedCounts classed_ideal_counts(const CMField& K, const ClassGroup& G, long X) {
    ClassedCounts out;
    out.cutoff = X;
    out.labels = G.classes();
    std::sort(out.labels.begin(), out.labels.end());
    int h = static_cast<int>(out.labels.size());
    out.cnt.assign(h, std::vector<std::uint32_t>(X + 1, 0));
    // prime ideals of norm <= X with their class labels
    struct PI {
        long norm;
        std::vector<BigInt> label;
    };
    std::vector<PI> pis;
    auto primes = primes_below(static_cast<std::uint32_t>(X) + 1);
    for (auto p : primes) {
        Rng rng(p);
        auto sp = split_prime(K, BigInt(p), rng);
        if (sp.empty() || pow_int(sp[0].p, sp[0].f) > X) continue;
        // one discrete log per rational prime; conjugates via the Galois action
        auto base_label = G.class_of_prime(K, sp[0].I);
        std::vector<int> done(sp.size(), 0);
        pis.push_back({static_cast<long>(pow_int(sp[0].p, sp[0].f).get_si()), base_label});
        done[0] = 1;
        if (sp.size() > 1) {
            for (const auto& s : K.automorphisms()) {
                FracIdeal img = ideal_apply(K, s, sp[0].I);
                for (size_t j = 1; j < sp.size(); ++j) {
                    if (done[j] || !(img == sp[j].I)) continue;
                    // label of sigma(P): permute the factor base through sigma
                    std::vector<BigInt> lbl(G.factor_base().size(), 0);
                    for (size_t i = 0; i < G.factor_base().size(); ++i) {
                        if (base_label[i] == 0) continue;
                        FracIdeal im2 = ideal_apply(K, s, G.factor_base()[i].I);
                        bool found = false;
                        for (size_t k = 0; k < G.factor_base().size(); ++k)
                            if (G.factor_base()[k].I == im2) {
                                lbl[k] += base_label[i];
                                found = true;
                                break;
                            }
                        if (!found) throw Error("factor base not Galois stable");
                    }
                    pis.push_back({static_cast<long>(pow_int(sp[j].p, sp[j].f).get_si()),
                                   G.reduce(lbl)});
                    done[j] = 1;
                }
            }
            for (size_t j = 0; j < sp.size(); ++j)
                if (!done[j])
                    pis.push_back({static_cast<long>(pow_int(sp[j].p, sp[j].f).get_si()),
                                   G.class_of_prime(K, sp[j].I)});
        }
    }
    std::sort(pis.begin(), pis.end(), [](const PI& a, const PI& b) { return a.norm < b.norm; });
    // enumeration by non-decreasing prime-ideal index; each ideal visited once
    std::vector<BigInt> zero = G.label_zero();
    std::function<void(size_t, long, const std::vector<BigInt>&)> rec =
        [&](size_t i, long norm, const std::vector<BigInt>& lbl) {
            auto red = G.reduce(lbl);
            int idx = out.index_of(G, red);
            if (idx < 0) throw Error("classed_ideal_counts: class index");
            out.cnt[idx][norm]++;
            for (size_t j = i; j < pis.size(); ++j) {
                if (norm > X / pis[j].norm) break;
                std::vector<BigInt> l = lbl;
                for (size_t t = 0; t < l.size(); ++t) l[t] += pis[j].label[t];
                rec(j, norm * pis[j].norm, l);
            }
        };
    rec(0, 1, zero);
    return out;
}

std::vector<ClassCharacter> class_characters(const ClassGroup& G) {
    std::vector<ClassCharacter> out;
    const auto& orders = G.cyclic_orders();
    std::vector<BigInt> exps(orders.size(), 0);
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == orders.size()) {
            out.push_back({exps});
            return;
        }
        for (BigInt e = 0; e < orders[i]; ++e) {
            exps[i] = e;
            rec(i + 1);
        }
        exps[i] = 0;
    };
    rec(0);
    return out;
}

BigRat character_phase(const ClassGroup& G, const ClassCharacter& chi,
                       const std::vector<BigInt>& label) {
    auto w = G.cyclic_coords(label);
    const auto& orders = G.cyclic_orders();
    BigRat phase = 0;
    for (size_t j = 0; j < orders.size(); ++j) {
        BigRat term(chi.exps[j] * w[j], orders[j]);
        term.canonicalize();
        phase += term;
    }
    // reduce mod 1
    BigInt fl = div_floor(phase.get_num(), phase.get_den());
    phase -= BigRat(fl);
    return phase;
}

namespace {

RealBall f_weight(long n, const RealBall& x, mpfr_prec_t prec) {
    // f(n/x) = (n/x)^{-1/2} e^{-n/x}
    RealBall y = RealBall::exact_int(n, prec) / x;
    return (-(y)).exp() / y.sqrt();
}

RealBall smoothed_tail(const RealBall& x, long N0, mpfr_prec_t prec) {
    // sum_{n>N0} n^2 f(n/x) <= sqrt(x) N0^{3/2} e^{-N0/(2x)} (2x+1), for N0 >= 3x
    RealBall N0b = RealBall::exact_int(N0, prec);
    RealBall e = (-(N0b / (RealBall::exact_int(2, prec) * x))).exp();
    return x.sqrt() * N0b * N0b.sqrt() * e * (RealBall::exact_int(2, prec) * x +
                                              RealBall::exact_int(1, prec));
}

}  // namespace

ComplexBall smoothed_sum_S(const ClassGroup& G, const ClassedCounts& cc,
                           const ClassCharacter& chi, const RealBall& x, mpfr_prec_t prec) {
    // per-class weighted sums, then multiply by character values
    int h = static_cast<int>(cc.labels.size());
    std::vector<RealBall> T(h, RealBall(prec));
    for (long n = 1; n <= cc.cutoff; ++n) {
        bool any = false;
        for (int c = 0; c < h; ++c)
            if (cc.cnt[c][n]) any = true;
        if (!any) continue;
        RealBall fn = f_weight(n, x, prec);
        for (int c = 0; c < h; ++c)
            if (cc.cnt[c][n]) T[c] += fn * RealBall::exact_int(cc.cnt[c][n], prec);
    }
    ComplexBall S(prec);
    RealBall two_pi = RealBall::const_pi(prec) * RealBall::exact_int(2, prec);
    for (int c = 0; c < h; ++c) {
        BigRat ph = character_phase(G, chi, cc.labels[c]);
        RealBall ang = two_pi * RealBall::exact_rat(ph, prec);
        S += ComplexBall{ang.cos(), ang.sin()} * ComplexBall{T[c], RealBall(prec)};
    }
    RealBall tail = smoothed_tail(x, cc.cutoff, prec);
    S.re.add_error(tail);
    S.im.add_error(tail);
    return S;
}

RealBall coset_sum_SH(const ClassGroup& G, const ClassedCounts& cc,
                      const std::vector<std::vector<BigInt>>& H, const RealBall& x,
                      mpfr_prec_t prec) {
    RealBall S(prec);
    double xhi = x.hi_d();
    for (auto& lbl : H) {
        int idx = cc.index_of(G, G.reduce(lbl));
        if (idx < 0) throw Error("coset_sum_SH: class not found");
        for (long n = 1; n <= cc.cutoff && n <= static_cast<long>(xhi) + 1; ++n) {
            if (!cc.cnt[idx][n]) continue;
            // norm <= x constraint resolved by the exact comparison n <= x
            auto le = RealBall::exact_int(n, prec).lt_certain(x);
            if (le.has_value() && !*le) continue;  // n > x certified
            S += f_weight(n, x, prec) * RealBall::exact_int(cc.cnt[idx][n], prec);
        }
    }
    return S;
}

RealBall min_norm_average(const CMField& K, const std::vector<ClassRecord>& recs,
                          const std::vector<std::vector<BigInt>>& H, mpfr_prec_t prec) {
    RealBall sum(prec);
    RealBall sd = RealBall::exact_int(abs(K.disc()), prec).sqrt();
    long count = 0;
    for (auto& lbl : H) {
        for (auto& r : recs) {
            if (r.label == lbl) {
                sum += (sd / RealBall::exact_int(r.min_norm, prec)).sqrt();
                ++count;
                break;
            }
        }
    }
    if (count != static_cast<long>(H.size())) throw Error("min_norm_average: missing class");
    return sum / RealBall::exact_int(count, prec);
}

int unit_index_Q(const CMField& K) {
    // Q = 2 iff some zeta^j eps^{+-1} is a square in K
    const Embeddings& E = K.embeddings(320);
    for (int sgn = -1; sgn <= 1; sgn += 2) {
        NFElement eps = K.pow_elt(K.fund_unit(), sgn);
        for (int j = 0; j < K.torsion_order(); ++j) {
            NFElement t = K.mul(K.pow_elt(K.torsion_unit(), j), eps);
            // candidate square roots via embedding values
            ComplexBall t0 = E.eval(t, 0), t2 = E.eval(t, 2);
            // sqrt balls (midpoint square roots, both signs)
            auto msqrt = [&](const ComplexBall& v) {
                double re = v.re.mid_d(), im = v.im.mid_d();
                double r = std::hypot(re, im);
                double a = std::sqrt((r + re) / 2);
                double b = (im >= 0 ? 1 : -1) * std::sqrt(std::max(0.0, (r - re) / 2));
                return std::pair<double, double>(a, b);
            };
            auto [s0r, s0i] = msqrt(t0);
            auto [s2r, s2i] = msqrt(t2);
            for (int s1 = -1; s1 <= 1; s1 += 2)
                for (int s2s = -1; s2s <= 1; s2s += 2) {
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
                    A[0][4] = s1 * s0r;
                    A[1][4] = s1 * s0i;
                    A[2][4] = s2s * s2r;
                    A[3][4] = s2s * s2i;
                    // gaussian elimination
                    bool sing = false;
                    for (int col = 0; col < 4 && !sing; ++col) {
                        int piv = -1;
                        double best = 1e-9;
                        for (int row = col; row < 4; ++row)
                            if (std::abs(A[row][col]) > best) {
                                best = std::abs(A[row][col]);
                                piv = row;
                            }
                        if (piv < 0) {
                            sing = true;
                            break;
                        }
                        for (int c = 0; c < 5; ++c) std::swap(A[col][c], A[piv][c]);
                        for (int row = 0; row < 4; ++row) {
                            if (row == col) continue;
                            double f = A[row][col] / A[col][col];
                            for (int c = col; c < 5; ++c) A[row][c] -= f * A[col][c];
                        }
                    }
                    if (sing) continue;
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
                    NFElement u = K.from_integral_coords(c);
                    if (K.mul(u, u) == t) return 2;
                }
        }
    }
    return 1;
}

KappaResult residue_kappa(const CMField& K, const ClassGroup& G, mpfr_prec_t prec) {
    KappaResult r;
    r.w_K = K.torsion_order();
    r.Q = unit_index_Q(K);
    RealBall RF = K.subfield_F().regulator(prec);
    r.R_K = RealBall::exact_int(2, prec) * RF / RealBall::exact_int(r.Q, prec);
    RealBall pi = RealBall::const_pi(prec);
    RealBall num = RealBall::exact_int(4, prec) * pi * pi *
                   RealBall::exact_int(G.h(), prec) * r.R_K;
    RealBall den = RealBall::exact_int(r.w_K, prec) *
                   RealBall::exact_int(abs(K.disc()), prec).sqrt();
    r.kappa = num / den;
    r.w_is_2 = (r.w_K == 2);
    return r;
}

namespace {

RealBall chandee_prime_sum(int d, const BigRat& lambda, mpfr_prec_t prec, bool primes_only) {
    // x = e^4, log x = 4; sum over prime powers n <= x of
    // d log(p) / n^{1/2 + lambda/4} * log(x/n) / (4 log n)
    RealBall logx = RealBall::exact_int(4, prec);
    RealBall x = logx.exp();
    double xhi = x.hi_d();
    RealBall expo = RealBall::exact_rat(BigRat(1, 2) + lambda / 4, prec);
    RealBall sum(prec);
    auto primes = primes_below(64);
    for (auto p : primes) {
        RealBall logp = RealBall::exact_int(p, prec).log();
        std::uint64_t n = p;
        int k = 1;
        while (static_cast<double>(n) <= xhi) {
            if (k > 1 && primes_only) break;
            RealBall nb = RealBall::exact_int(static_cast<long>(n), prec);
            RealBall logn = nb.log();
            RealBall npow = (expo * logn).exp();
            RealBall term = RealBall::exact_int(d, prec) * logp / npow *
                            (logx - logn) / (logx * logn);
            // only add when n <= x certainly (e^4 = 54.598...; integers are safe)
            if (static_cast<double>(n) <= 54.0 ||
                (RealBall::exact_int(static_cast<long>(n), prec).lt_certain(x).value_or(false)))
                sum += term;
            n *= p;
            ++k;
        }
    }
    return sum;
}

RealBall chandee_smalls(int d, const BigRat& lambda, mpfr_prec_t prec) {
    // (l^2+l) d/(log x)^2 + d e^{-l} / (x^{1/2} (log x)^2), log x = 4
    RealBall l = RealBall::exact_rat(lambda, prec);
    RealBall d16 = RealBall::exact_rat(BigRat(d, 16), prec);
    RealBall t1 = (l * l + l) * d16;
    RealBall x_half = RealBall::exact_int(2, prec).exp();  // e^2
    RealBall t2 = d16 * (-(l)).exp() / x_half;
    return t1 + t2;
}

}  // namespace

ChandeeResult chandee_constant(int d, const BigRat& lambda, mpfr_prec_t prec) {
    ChandeeResult r;
    // conductor exponent (1+lambda)/(2 log x) with log x = 4
    r.delta_exp = (1 + lambda) / 8;
    r.t_exp = (1 + lambda) / 2;  // 4 * delta_exp
    RealBall smalls = chandee_smalls(d, lambda, prec);
    RealBall conductor_const =
        (RealBall::exact_rat(r.delta_exp, prec) *
         RealBall::exact_rat(BigRat(7, 10000), prec).log())
            .exp();
    RealBall full = (chandee_prime_sum(d, lambda, prec, false) + smalls).exp() * conductor_const;
    RealBall ponly = (chandee_prime_sum(d, lambda, prec, true) + smalls).exp() * conductor_const;
    r.constant = full;
    r.constant_primes_only = ponly;
    return r;
}

ChandeeResult chandee_zeta_aggregate(mpfr_prec_t prec) {
    // zeta_K/zeta route: degree 3, conductor (|1+2it||3+2it|^2/(4pi)^3)|disc|
    // <= (18/(4pi)^3) (1+|t|)^3 |disc|; aggregate with |zeta(1/2+it)| <= 13 (1+|t|)^{3/16}
    ChandeeResult r;
    BigRat lambda(1, 2);
    r.delta_exp = BigRat(3, 16);
    r.t_exp = BigRat(3, 4);  // 9/16 from the quotient + 3/16 from zeta
    RealBall smalls = chandee_smalls(3, lambda, prec);
    RealBall pi = RealBall::const_pi(prec);
    RealBall fourpi3 = (RealBall::exact_int(4, prec) * pi) *
                       (RealBall::exact_int(4, prec) * pi) *
                       (RealBall::exact_int(4, prec) * pi);
    RealBall cond = RealBall::exact_int(18, prec) / fourpi3;
    RealBall cond_const = (RealBall::exact_rat(BigRat(3, 16), prec) * cond.log()).exp();
    RealBall thirteen = RealBall::exact_int(13, prec);
    RealBall full =
        (chandee_prime_sum(3, lambda, prec, false) + smalls).exp() * cond_const * thirteen;
    RealBall ponly =
        (chandee_prime_sum(3, lambda, prec, true) + smalls).exp() * cond_const * thirteen;
    r.constant = full;
    r.constant_primes_only = ponly;
    return r;
}

std::vector<long> delta_lemma_scan(long lo, long hi) {
    std::vector<long> bad;
    std::vector<std::int32_t> spf(hi + 1, 0);
    for (long i = 2; i <= hi; ++i) {
        if (spf[i] == 0)
            for (long j = i; j <= hi; j += i)
                if (spf[j] == 0) spf[j] = static_cast<std::int32_t>(i);
    }
    for (long n = std::max(lo, 3L); n <= hi; ++n) {
        int delta = 0;
        long m = n;
        long last = 0;
        while (m > 1) {
            long p = spf[m];
            if (p != last) ++delta;
            last = p;
            m /= p;
        }
        double lhs = delta * std::log(2.0) * std::log(std::log(static_cast<double>(n)));
        double rhs = std::log(static_cast<double>(n));
        if (lhs <= rhs - 1e-9) continue;
        // near or over the line: certify with balls
        mpfr_prec_t prec = 128;
        RealBall nb = RealBall::exact_int(n, prec);
        RealBall lhsb = RealBall::exact_int(delta, prec) * RealBall::exact_int(2, prec).log() *
                        nb.log().log();
        RealBall rhsb = nb.log();
        auto le = lhsb.lt_certain(rhsb);
        if (!(le.has_value() && *le)) {
            // check equality-tolerant: the lemma wants <=
            auto gt = rhsb.lt_certain(lhsb);
            if (gt.has_value() && *gt) bad.push_back(n);
        }
    }
    return bad;
}

RealBall coset_size_bound_rhs(const BigInt& disc_K, const RealQuadField& F, mpfr_prec_t prec) {
    RealBall d = RealBall::exact_int(abs(disc_K), prec);
    RealBall logd = d.log();
    RealBall RF = F.regulator(prec);
    RealBall hF3 = RealBall::exact_int(F.h_F * F.h_F * F.h_F, prec);
    RealBall dpow = (logd / logd.log()).exp();  // d^{1/loglog d}
    return RealBall::exact_int(215, prec) * hF3 * RF * logd * dpow;
}

MainBound main_theorem_bound(const RealQuadField& F, const BigRat& h0_term,
                             const BigRat& gammaF, mpfr_prec_t prec) {
    MainBound out;
    RealBall RF = F.regulator(prec);
    RealBall hF3 = RealBall::exact_int(F.h_F * F.h_F * F.h_F, prec);
    out.branches[0] = RealBall::exact_int(64, prec).exp();
    out.branches[1] = RealBall::exact_int(64, prec) *
                      (RealBall::exact_int(144000, prec) * hF3 * RF).log();
    RealBall inner = RealBall::exact_rat(h0_term, prec) +
                     RealBall::exact_rat(gammaF, prec) / RealBall::exact_int(2, prec) +
                     RealBall::exact_int(F.disc_F, prec).log() / RealBall::exact_int(4, prec) +
                     RealBall::exact_rat(BigRat(84, 10), prec) * RF +
                     RealBall::exact_rat(BigRat(145, 100), prec);
    out.branches[2] = RealBall::exact_int(10, prec) * inner;
    out.log_bound = RealBall::max(RealBall::max(out.branches[0], out.branches[1]),
                                  out.branches[2]);
    out.branch = 0;
    double best = out.branches[0].mid_d();
    for (int i = 1; i < 3; ++i)
        if (out.branches[i].mid_d() > best) {
            best = out.branches[i].mid_d();
            out.branch = i;
        }
    return out;
}

} // namespace g2cm
