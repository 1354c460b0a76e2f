#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "g2cm/analytic.hpp"
#include "g2cm/heights.hpp"
#include "g2cm/theta.hpp"

using namespace g2cm;

namespace {
ZPoly poly(std::initializer_list<long> asc) {
    std::vector<BigInt> c;
    for (long v : asc) c.emplace_back(v);
    return ZPoly(std::move(c));
}
const CMField& zeta5() {
    static CMField K = CMField::make(poly({1, 1, 1, 1, 1}));
    return K;
}
}  // namespace

TEST_CASE("ideal counts for Q(zeta5)") {
    auto t = ideal_counts(zeta5(), 2000);
    CHECK(t.counts[1] == 1);
    CHECK(t.counts[5] == 1);
    CHECK(t.counts[11] == 4);
    CHECK(t.counts[2] == 0);
    CHECK(t.counts[16] == 1);
    CHECK(t.counts[25] == 1);
    CHECK(t.counts[121] == 10);
}

TEST_CASE("kappa residue for Q(zeta5): w = 10 branch") {
    Rng rng(0);
    auto G = ClassGroup::compute(zeta5(), rng);
    auto kr = residue_kappa(zeta5(), G, 128);
    CHECK(kr.w_K == 10);
    CHECK(kr.Q == 1);
    CHECK(!kr.w_is_2);
    // oracle: L(1,chi)L(1,chi^3)L(1,chi^2) = 0.3398372782405235
    CHECK(kr.kappa.mid_d() == doctest::Approx(0.3398372782405235).epsilon(1e-10));
    RealBall rhs = RealBall::exact_int(2, 128) /
                   (RealBall::exact_int(1, 128).exp() * RealBall::exact_int(125, 128).log());
    CHECK(rhs.lt_certain(kr.kappa).value_or(false));
}

TEST_CASE("kappa matches the ideal-count trend within 20 percent") {
    long X = 1000000;
    auto t = ideal_counts(zeta5(), X);
    double total = 0;
    for (long n = 1; n <= X; ++n) total += t.counts[n];
    Rng rng(0);
    auto G = ClassGroup::compute(zeta5(), rng);
    auto kr = residue_kappa(zeta5(), G, 128);
    double ratio = total / (kr.kappa.mid_d() * X);
    CHECK(ratio > 0.8);
    CHECK(ratio < 1.2);
}

TEST_CASE("character orthogonality") {
    ZPoly f = poly({45, 0, 15, 0, 1});
    CMField K = CMField::make(f);
    Rng rng(0);
    auto G = ClassGroup::compute(K, rng);
    auto chars = class_characters(G);
    CHECK(BigInt(static_cast<long>(chars.size())) == G.h());
    for (auto& cls : G.classes()) {
        bool zero = true;
        for (auto& v : cls)
            if (v != 0) zero = false;
        mpfr_prec_t prec = 128;
        ComplexBall sum(prec);
        RealBall twopi = RealBall::const_pi(prec) * RealBall::exact_int(2, prec);
        for (auto& chi : chars) {
            RealBall ang = twopi * RealBall::exact_rat(character_phase(G, chi, cls), prec);
            sum += ComplexBall{ang.cos(), ang.sin()};
        }
        if (zero)
            CHECK(sum.re.contains_int(G.h()));
        else
            CHECK(sum.contains_zero());
    }
}

TEST_CASE("smoothed sums: bound shapes on Q(zeta5)") {
    const CMField& K = zeta5();
    Rng rng(0);
    auto G = ClassGroup::compute(K, rng);
    mpfr_prec_t prec = 96;
    RealBall x = RealBall::exact_int(125, prec).sqrt();
    long cutoff = 1200;
    auto cc = classed_ideal_counts(K, G, cutoff);
    auto chars = class_characters(G);
    REQUIRE(chars.size() == 1);
    ComplexBall S1 = smoothed_sum_S(G, cc, chars[0], x, prec);
    CHECK(S1.im.contains_zero());
    CHECK(S1.re.mid_d() > 0);
    auto kr = residue_kappa(K, G, prec);
    RealBall pi = RealBall::const_pi(prec);
    RealBall rhs = RealBall::exact_int(393, prec) *
                       (RealBall::exact_rat(BigRat(15, 32), prec) *
                        RealBall::exact_int(125, prec).log())
                           .exp() +
                   (pi * pi * pi * pi * pi).sqrt() / RealBall::exact_int(2, prec) *
                       RealBall::exact_int(G.h(), prec) * kr.R_K;
    CHECK(S1.abs().lt_certain(rhs).value_or(false));
    std::vector<std::vector<BigInt>> H{G.label_zero()};
    RealBall SH = coset_sum_SH(G, cc, H, x, prec);
    CHECK(SH.mid_d() > 0);
    RealBall e = RealBall::exact_int(1, prec).exp();
    RealBall lhs(prec);
    for (long n = 1; n <= 11; ++n) {
        if (!cc.cnt[0][n]) continue;
        lhs += (x / RealBall::exact_int(n, prec)).sqrt() *
               RealBall::exact_int(cc.cnt[0][n], prec);
    }
    CHECK(lhs.lt_certain(e * SH).value_or(false));
    CHECK((e * SH).lt_certain(e * S1.re + RealBall::exact_rat(BigRat(1, 1000), prec))
              .value_or(false));
}

TEST_CASE("chandee constants: exponents exact, values recorded") {
    auto r4 = chandee_constant(4, BigRat(1, 2), 128);
    CHECK(r4.delta_exp == BigRat(3, 16));
    CHECK(r4.t_exp == BigRat(3, 4));
    MESSAGE("d=4 full constant = ", r4.constant.mid_d(),
            ", primes-only = ", r4.constant_primes_only.mid_d());
    CHECK(r4.constant_primes_only.lt_certain(RealBall::exact_int(263, 128)).value_or(false));
    CHECK(r4.constant.mid_d() > 500);
    auto rz = chandee_zeta_aggregate(128);
    MESSAGE("zeta aggregate full = ", rz.constant.mid_d(),
            ", primes-only = ", rz.constant_primes_only.mid_d());
    CHECK(rz.constant_primes_only.lt_certain(RealBall::exact_int(839, 128)).value_or(false));
    CHECK(rz.delta_exp == BigRat(3, 16));
    CHECK(rz.t_exp == BigRat(3, 4));
    auto r3 = chandee_constant(3, BigRat(1, 2), 128);
    CHECK(r3.constant.lt_certain(r4.constant).value_or(false));
}

TEST_CASE("delta lemma scan") {
    auto bad = delta_lemma_scan(10, 200000);
    CHECK(bad.empty());
    auto bad2 = delta_lemma_scan(30030, 30030);
    CHECK(bad2.empty());
}

TEST_CASE("coset size bound values") {
    auto F = real_quad_data(5);
    RealBall rhs125 = coset_size_bound_rhs(125, F, 128);
    RealBall lhs = RealBall::exact_int(125, 128).sqrt();
    MESSAGE("disc 125: LHS = ", lhs.mid_d(), " RHS = ", rhs125.mid_d());
    CHECK(rhs125.mid_d() > 0);
    RealBall rhs8000 = coset_size_bound_rhs(8000, F, 128);
    CHECK(rhs125.lt_certain(rhs8000).value_or(false));
}

TEST_CASE("main theorem bound: first branch dominates for Q(sqrt5), h0 = 0") {
    auto F = real_quad_data(5);
    auto mb = main_theorem_bound(F, BigRat(0), BigRat(2), 128);
    CHECK(mb.branch == 0);
    CHECK(mb.log_bound.mid_d() == doctest::Approx(std::exp(64.0)).epsilon(1e-12));
    CHECK(mb.branches[2].mid_d() == doctest::Approx(68.9).epsilon(0.01));
    auto mb2 = main_theorem_bound(F, BigRat(100), BigRat(2), 128);
    CHECK(mb.branches[2].lt_certain(mb2.branches[2]).value_or(false));
}

TEST_CASE("faltings height of Jac(y^2 = x^5+1) against the Colmez oracle") {
    const CMField& K = zeta5();
    mpfr_prec_t prec = 256;
    std::array<RealBall, 4> hinf;
    int i = 0;
    for (auto& type : K.cm_types()) {
        auto search = find_polarizations(K, type, ideal_one(K), 4, prec);
        REQUIRE(!search.triples.empty());
        auto e = symplectic_basis(K, search.triples.front());
        PeriodPoint r = reduce_to_F2(period_matrix(K, e, type, prec));
        ThetaVector t = theta_constants(r, prec);
        RealBall d = r.det_y();
        RealBall val = chi10(t).abs() * d * d * d * d * d;
        hinf[i++] = infinity_part({val}, prec);
    }
    auto hr = faltings_height(hinf, BigRat(0), K.disc(), K.subfield_F(), prec);
    // Colmez-formula oracle (computed before the build):
    // h = -Re(L'(0,psi)/L(0,psi)) - log(5)/2 = -1.45250923964564465...
    CHECK(std::abs(hr.faltings.mid_d() - (-1.45250923964564465)) < 1e-5);
    CHECK(hr.faltings.rad_d() < 1e-9);
    CHECK(hr.lower_bound_ok.value_or(false));
    CHECK((hinf[0] - hinf[1]).contains_zero());
    CHECK((hinf[0] - hinf[3]).contains_zero());
    CHECK(hr.below_threshold);
    for (auto& v : hr.hinf_le_finalbh) CHECK(v.value_or(false));
}

TEST_CASE("unit index Q for the disc-8000 field") {
    CMField K = CMField::make(poly({20, 0, 10, 0, 1}));
    CHECK(unit_index_Q(K) == 1);
}
