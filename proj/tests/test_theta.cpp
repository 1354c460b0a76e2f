#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "g2cm/igusa.hpp"

using namespace g2cm;

namespace {
ZPoly poly(std::initializer_list<long> asc) {
    std::vector<BigInt> c;
    for (long v : asc) c.emplace_back(v);
    return ZPoly(std::move(c));
}

PeriodPoint reduced_cm_point(const CMField& K, mpfr_prec_t prec) {
    auto search = find_polarizations(K, K.cm_types()[0], ideal_one(K), 4, prec);
    REQUIRE(!search.triples.empty());
    auto e = symplectic_basis(K, search.triples.front());
    return reduce_to_F2(period_matrix(K, e, search.triples.front().type, prec));
}
}  // namespace

TEST_CASE("ten even characteristics") {
    CHECK(even_characteristics().size() == 10);
}

TEST_CASE("theta at i*Id factors through genus 1 values") {
    mpfr_prec_t prec = 192;
    PeriodPoint p;
    p.z1 = ComplexBall::exact_int(0, 1, prec);
    p.z2 = ComplexBall::exact_int(0, 1, prec);
    p.z12 = ComplexBall(prec);
    ThetaVector t = theta_constants(p, prec);
    CHECK(t.v[0].im.contains_zero());
    CHECK(t.v[0].re.mid_d() == doctest::Approx(1.1803405990160).epsilon(1e-10));
    CHECK(chi10(t).contains_zero());
    CHECK_THROWS_AS(igusa_invariants(t), DecomposablePoint);
}

TEST_CASE("zeta5 point: chi10 value and precision consistency") {
    CMField K = CMField::make(poly({1, 1, 1, 1, 1}));
    PeriodPoint r = reduced_cm_point(K, 256);
    ThetaVector t = theta_constants(r, 256);
    ComplexBall c = chi10(t);
    CHECK(c.abs().mid_d() == doctest::Approx(0.308188849003633).epsilon(1e-10));
    ThetaVector t2 = theta_constants(r, 320);
    ComplexBall c2 = chi10(t2);
    CHECK((c - c2).contains_zero());
    for (auto& th : t.v) CHECK(!th.contains_zero());
}

TEST_CASE("chi10 lower bound (HP Prop 5.6 shape) on both curve points") {
    for (auto pl : {poly({1, 1, 1, 1, 1}), poly({20, 0, 10, 0, 1})}) {
        CMField K = CMField::make(pl);
        PeriodPoint r = reduced_cm_point(K, 256);
        ThetaVector t = theta_constants(r, 256);
        RealBall lhs = chi10(t).abs();
        mpfr_prec_t prec = 256;
        RealBall pi = RealBall::const_pi(prec);
        RealBall pz = pi * r.z12.abs();
        RealBall m = RealBall::min(RealBall::exact_int(1, prec), pz);
        RealBall rhs = RealBall::exact_rat(BigRat(1, 12500), prec) * m * m *
                       (-(RealBall::exact_int(2, prec) * pi * r.tr_y())).exp();
        CHECK(rhs.lt_certain(lhs).value_or(false));
    }
}

TEST_CASE("weight-10 modularity of |chi10| det(Y)^5") {
    mpfr_prec_t prec = 224;
    PeriodPoint z;
    z.z1 = {RealBall::exact_rat(BigRat(137, 1000), prec),
            RealBall::exact_rat(BigRat(1113, 1000), prec)};
    z.z12 = {RealBall::exact_rat(BigRat(71, 1000), prec),
             RealBall::exact_rat(BigRat(253, 1000), prec)};
    z.z2 = {RealBall::exact_rat(BigRat(-201, 1000), prec),
            RealBall::exact_rat(BigRat(1319, 1000), prec)};
    ThetaVector t0 = theta_constants(z, prec);
    RealBall d0 = z.det_y();
    RealBall inv0 = chi10(t0).abs() * d0 * d0 * d0 * d0 * d0;
    Rng rng(5);
    for (int k = 0; k < 3; ++k) {
        IntMatrix M = random_symplectic(rng, 4);
        PeriodPoint zm = apply_symplectic(M, z);
        ThetaVector tm = theta_constants(zm, prec);
        RealBall dm = zm.det_y();
        RealBall invm = chi10(tm).abs() * dm * dm * dm * dm * dm;
        CHECK((inv0 - invm).contains_zero());
    }
}

TEST_CASE("exact transvectant oracle: x^5+1") {
    std::vector<BigRat> s{BigRat(0), BigRat(1), BigRat(0), BigRat(0),
                          BigRat(0), BigRat(0), BigRat(1)};
    auto ic = ic_from_sextic_exact(s);
    CHECK(ic.I2 == 0);
    CHECK(ic.I4 == 0);
    CHECK(ic.I6 == 0);
    CHECK(ic.I10 == 3125);
}

TEST_CASE("cross-oracle invariants for Q(zeta5) at 200 bits") {
    CMField K = CMField::make(poly({1, 1, 1, 1, 1}));
    PeriodPoint r = reduced_cm_point(K, 200);
    ThetaVector t = theta_constants(r, 200);
    InvariantTriple inv = igusa_invariants(t);
    CHECK(inv.j1.contains_zero());
    CHECK(inv.j2.contains_zero());
    CHECK(inv.j3.contains_zero());
    CHECK(inv.j1.abs().hi_d() < 1e-30);
}

TEST_CASE("disc-8000 point reproduces the published integer invariants") {
    CMField K = CMField::make(poly({20, 0, 10, 0, 1}));
    PeriodPoint r = reduced_cm_point(K, 700);
    ThetaVector t = theta_constants(r, 700);
    InvariantTriple inv = igusa_invariants(t);
    CHECK(inv.j1.im.contains_zero());
    CHECK(inv.j1.re.contains_int(BigInt("183708000")));
    CHECK(inv.j2.re.contains_int(BigInt("474590099025000000")));
    CHECK(inv.j3.re.contains_int(BigInt("25021491747613593750000000")));
    auto r1 = recognize_rational(inv.j1.re, 1);
    REQUIRE(r1.has_value());
    CHECK(*r1 == BigRat(BigInt("183708000")));
}

TEST_CASE("rational recognition rejects wide balls") {
    RealBall wide = RealBall::from_double(0.5, 64);
    wide.add_error_2exp(-2);
    CHECK(!recognize_rational(wide, 100).has_value());
    RealBall tight = RealBall::exact_rat(BigRat(22, 7), 128);
    auto r = recognize_rational(tight, 100);
    REQUIRE(r.has_value());
    CHECK(*r == BigRat(22, 7));
}

TEST_CASE("class polynomials: degree-1 integral for the disc-8000 orbit") {
    CMField K = CMField::make(poly({20, 0, 10, 0, 1}));
    PeriodPoint r = reduced_cm_point(K, 700);
    ThetaVector t = theta_constants(r, 700);
    InvariantTriple inv = igusa_invariants(t);
    auto cp = class_polynomials({inv}, BigInt(1) << 60);
    REQUIRE(cp.h1.size() == 1);
    CHECK(cp.h1[0] == -BigRat(BigInt("183708000")));
    CHECK(cp.h2[0] == -BigRat(BigInt("474590099025000000")));
    CHECK(cp.h3[0] == -BigRat(BigInt("25021491747613593750000000")));
    CHECK(!refute_integrality({inv}));
}

TEST_CASE("deliberately truncated run fails recognition instead of lying") {
    CMField K = CMField::make(poly({20, 0, 10, 0, 1}));
    PeriodPoint r = reduced_cm_point(K, 80);
    ThetaVector t = theta_constants(r, 80);
    InvariantTriple inv = igusa_invariants(t);
    bool threw = false;
    try {
        auto cp = class_polynomials({inv}, BigInt(1) << 60);
        (void)cp;
    } catch (const RecognitionFailed&) {
        threw = true;
    }
    CHECK(threw);
}
