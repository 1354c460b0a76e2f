#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "g2cm/numberfield.hpp"

using namespace g2cm;

namespace {
ZPoly poly(std::initializer_list<long> asc) {
    std::vector<BigInt> c;
    for (long v : asc) c.emplace_back(v);
    return ZPoly(std::move(c));
}
}  // namespace

TEST_CASE("maximal order: zeta5 field") {
    CMField K = CMField::make(poly({1, 1, 1, 1, 1}));
    CHECK(K.disc() == 125);
    CHECK(K.subfield_F().disc_F == 5);
    CHECK(K.subfield_F().h_F == 1);
    CHECK(K.torsion_order() == 10);
    RealBall reg = K.subfield_F().regulator(128);
    CHECK(reg.mid_d() == doctest::Approx(0.4812118250596034).epsilon(1e-14));
}

TEST_CASE("maximal order: disc 8000 field with index 4") {
    CMField K = CMField::make(poly({20, 0, 10, 0, 1}));
    CHECK(K.disc() == 8000);
    CHECK(K.subfield_F().disc_F == 5);
    CHECK(K.torsion_order() == 2);
    CHECK(poly_discriminant(K.poly()) / K.disc() == 16);
}

TEST_CASE("maximal order: x^4+1 -> disc 256") {
    CMField K = CMField::make(poly({1, 0, 0, 0, 1}));
    CHECK(K.disc() == 256);
    CHECK(K.subfield_F().disc_F == 8);
    CHECK(K.torsion_order() == 8);
    CHECK(!K.is_cyclic());  // Q(zeta8) has Galois group V4
}

TEST_CASE("NotCM for a field with real embeddings") {
    CHECK_THROWS_AS(CMField::make(poly({-2, 0, 0, 0, 1})), NotCM);
}

TEST_CASE("galois vs non-galois vs V4") {
    // Gal(Q(zeta12)/Q) = (Z/12)^* = V4: constructs, but is not cyclic
    CMField K12 = CMField::make(ZPoly::cyclotomic(12));
    CHECK(!K12.is_cyclic());
    CHECK(K12.disc() == 144);
    CHECK(K12.torsion_order() == 12);
    CHECK_THROWS_AS(K12.galois_gen(), NotCyclic);
    // x^4+x+1 is totally imaginary with generic Galois group: not Galois
    CHECK_THROWS_AS(CMField::make(poly({1, 1, 0, 0, 1})), NotCyclic);
    // x^4+4x^2+2 (conductor 16, contains sqrt2) is cyclic
    CMField K = CMField::make(poly({2, 0, 4, 0, 1}));
    CHECK(K.is_cyclic());
    CHECK(K.subfield_F().disc_F == 8);
}

TEST_CASE("real_quad_data spec examples") {
    auto F5 = real_quad_data(5);
    CHECK(F5.h_F == 1);
    CHECK(F5.unit_x == 1);
    CHECK(F5.unit_y == 1);
    CHECK(F5.unit_norm == -1);

    auto F8 = real_quad_data(8);
    CHECK(F8.h_F == 1);
    CHECK(F8.unit_x == 2);
    CHECK(F8.unit_y == 1);
    CHECK(F8.unit_norm == -1);

    auto F40 = real_quad_data(40);
    CHECK(F40.h_F == 2);

    CHECK_THROWS_AS(real_quad_data(48), NotFundamental);
    CHECK_THROWS_AS(real_quad_data(7), NotFundamental);
}

TEST_CASE("traces and norms are integers on integers") {
    CMField K = CMField::make(poly({20, 0, 10, 0, 1}));
    Rng rng(9);
    for (int t = 0; t < 30; ++t) {
        std::array<BigInt, 4> c;
        for (auto& v : c) v = rng.in_range(-8, 8);
        NFElement a = K.from_integral_coords(c);
        CHECK(K.trace(a).get_den() == 1);
        CHECK(K.norm(a).get_den() == 1);
        std::array<BigInt, 4> c2;
        for (auto& v : c2) v = rng.in_range(-8, 8);
        NFElement b = K.from_integral_coords(c2);
        CHECK(K.is_integral(K.mul(a, b)));
    }
}

TEST_CASE("conj commutes with complex conjugation of embeddings") {
    for (auto p : {poly({1, 1, 1, 1, 1}), poly({20, 0, 10, 0, 1})}) {
        CMField K = CMField::make(p);
        const auto& E = K.embeddings(192);
        Rng rng(4);
        for (int t = 0; t < 12; ++t) {
            std::array<BigInt, 4> c;
            for (auto& v : c) v = rng.in_range(-5, 5);
            NFElement a = K.from_integral_coords(c);
            NFElement ac = K.conj_elt(a);
            for (int j = 0; j < 4; ++j) {
                ComplexBall lhs = E.eval(ac, j);
                ComplexBall rhs = E.eval(a, j).conj();
                CHECK((lhs - rhs).contains_zero());
            }
        }
        NFElement alpha;
        alpha.pw = {BigRat(0), BigRat(1), BigRat(0), BigRat(0)};
        CHECK(K.apply(K.conj(), K.apply(K.conj(), alpha)) == alpha);
        CHECK(K.conj_elt(K.sqrt_discF()) == K.sqrt_discF());
        NFElement sq = K.mul(K.sqrt_discF(), K.sqrt_discF());
        CHECK(sq.pw[0] == BigRat(K.subfield_F().disc_F));
        CHECK(sq.pw[1] == 0);
        CHECK(K.conj_elt(K.fund_unit()) == K.fund_unit());
    }
}

TEST_CASE("galois generator has order 4 and sigma^2 = conj") {
    CMField K = CMField::make(poly({1, 1, 1, 1, 1}));
    const Automorphism& s = K.galois_gen();
    CHECK(s.order == 4);
    NFElement alpha;
    alpha.pw = {BigRat(0), BigRat(1), BigRat(0), BigRat(0)};
    NFElement s2 = K.apply(s, K.apply(s, alpha));
    NFElement cj = K.apply(K.conj(), alpha);
    CHECK(s2 == cj);
}

TEST_CASE("cm types: four, no conjugate pairs inside, two conjugation classes") {
    CMField K = CMField::make(poly({1, 1, 1, 1, 1}));
    auto types = K.cm_types();
    CHECK(types.size() == 4);
    for (auto& t : types) {
        CHECK(t.a != t.b);
        CHECK(!(t.a == 0 && t.b == 1));
        CHECK(!(t.a == 2 && t.b == 3));
    }
    CHECK(K.conjugation_classes().size() == 2);
}

TEST_CASE("torsion unit exactness") {
    CMField K = CMField::make(poly({1, 1, 1, 1, 1}));
    NFElement z = K.torsion_unit();
    NFElement acc = NFElement::one();
    for (int i = 0; i < 10; ++i) acc = K.mul(acc, z);
    CHECK(acc == NFElement::one());
    NFElement acc5 = NFElement::one();
    for (int i = 0; i < 5; ++i) acc5 = K.mul(acc5, z);
    CHECK(!(acc5 == NFElement::one()));
}

TEST_CASE("embedding order convention") {
    CMField K = CMField::make(poly({20, 0, 10, 0, 1}));
    const auto& E = K.embeddings(160);
    CHECK(E.roots[0].im.sign_certain().value_or(0) == 1);
    CHECK((E.roots[1].re - E.roots[0].re).contains_zero());
    CHECK((E.roots[1].im + E.roots[0].im).contains_zero());
    CHECK((E.roots[3].im + E.roots[2].im).contains_zero());
}

TEST_CASE("disc divisibility: disc_F | disc_K and disc_K = 5 f^2 when disc_F=5") {
    for (auto p : {poly({1, 1, 1, 1, 1}), poly({20, 0, 10, 0, 1})}) {
        CMField K = CMField::make(p);
        CHECK(mod_floor(K.disc(), K.subfield_F().disc_F) == 0);
        if (K.subfield_F().disc_F == 5) {
            BigInt q = K.disc() / 5;
            CHECK(is_square(q));
        }
    }
}
