#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "g2cm/classgroup.hpp"

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
const CMField& f8000() {
    static CMField K = CMField::make(poly({20, 0, 10, 0, 1}));
    return K;
}
}  // namespace

TEST_CASE("ideal arithmetic basics") {
    const CMField& K = zeta5();
    Rng rng(1);
    for (int t = 0; t < 8; ++t) {
        std::array<BigInt, 4> c;
        for (auto& v : c) v = rng.in_range(-5, 5);
        NFElement x = K.from_integral_coords(c);
        if (x.is_zero()) continue;
        FracIdeal I = ideal_principal(K, x);
        FracIdeal J = ideal_mul(K, I, ideal_inv(K, I));
        CHECK(J == ideal_one(K));
        std::array<BigInt, 4> c2;
        for (auto& v : c2) v = rng.in_range(-5, 5);
        NFElement y = K.from_integral_coords(c2);
        if (y.is_zero()) continue;
        FracIdeal Iy = ideal_principal(K, y);
        CHECK(ideal_norm(K, ideal_mul(K, I, Iy)) == ideal_norm(K, I) * ideal_norm(K, Iy));
    }
}

TEST_CASE("different ideal norms") {
    CHECK(ideal_norm(zeta5(), different_ideal(zeta5())) == 125);
    CHECK(ideal_norm(f8000(), different_ideal(f8000())) == 8000);
    const CMField& K = f8000();
    FracIdeal D = different_ideal(K);
    CHECK(ideal_mul(K, D, ideal_inv(K, D)) == ideal_one(K));
}

TEST_CASE("split_prime in Q(zeta5)") {
    const CMField& K = zeta5();
    auto s11 = split_prime(K, 11);
    CHECK(s11.size() == 4);
    for (auto& P : s11) {
        CHECK(P.e == 1);
        CHECK(P.f == 1);
        CHECK(ideal_norm(K, P.I) == 11);
    }
    auto s5 = split_prime(K, 5);
    CHECK(s5.size() == 1);
    CHECK(s5[0].e == 4);
    CHECK(s5[0].f == 1);
    auto s2 = split_prime(K, 2);
    CHECK(s2.size() == 1);
    CHECK(s2[0].e == 1);
    CHECK(s2[0].f == 4);
    CHECK_THROWS_AS(split_prime(K, 6), CompositeModulus);
}

TEST_CASE("split_prime at index divisor (disc 8000 field, p=2)") {
    const CMField& K = f8000();
    auto s2 = split_prime(K, 2);
    int efg = 0;
    for (auto& P : s2) efg += P.e * P.f;
    CHECK(efg == 4);
    CHECK(s2[0].e > 1);  // 2 | 8000 ramifies
}

TEST_CASE("minkowski bound values") {
    BigRat m1 = minkowski_bound(zeta5());
    CHECK(m1 > BigRat(169, 100));
    CHECK(m1 < BigRat(17, 10));
    BigRat m2 = minkowski_bound(f8000());
    CHECK(m2 > BigRat(1358, 100));
    CHECK(m2 < BigRat(1360, 100));
}

TEST_CASE("class groups against the analytic oracle") {
    Rng rng(0);
    auto G1 = ClassGroup::compute(zeta5(), rng);
    CHECK(G1.h() == 1);
    // disc-8000 field: h = 2 (analytic class number formula with
    // kappa_K = L(1,chi) L(1,chi^2) L(1,chi^3) = 0.4247966..., unit index Q=1)
    auto G2 = ClassGroup::compute(f8000(), rng);
    CHECK(G2.h() == 2);
    BigInt prod = 1;
    for (auto& d : G2.elementary_divisors()) prod *= d;
    CHECK(prod == G2.h());
}

TEST_CASE("principality finds generators of random principal ideals") {
    const CMField& K = f8000();
    Rng rng(77);
    int tested = 0;
    for (int t = 0; t < 40 && tested < 12; ++t) {
        std::array<BigInt, 4> c;
        for (auto& v : c) v = rng.in_range(-4, 4);
        NFElement x = K.from_integral_coords(c);
        if (x.is_zero()) continue;
        BigRat n = K.norm(x);
        if (abs(BigInt(n.get_num())) > 100000) continue;
        FracIdeal I = ideal_principal(K, x);
        auto g = ideal_principal_gen(K, I);
        REQUIRE(g.has_value());
        CHECK(abs(K.norm(*g)) == abs(n));
        ++tested;
    }
    CHECK(tested >= 8);
}

TEST_CASE("class group with h > 1 and determinism across seeds") {
    // conductor-60 cyclic quartic containing sqrt5, disc 18000
    // (Gaussian-period polynomial; h = 4 by the analytic class number formula
    // with Q=1, computed as an oracle before the build)
    ZPoly f = poly({45, 0, 15, 0, 1});
    CMField K = CMField::make(f);
    CHECK(K.disc() == 18000);
    CHECK(K.is_cyclic());
    Rng r1(0), r2(987654);
    auto G1 = ClassGroup::compute(K, r1);
    auto G2 = ClassGroup::compute(K, r2);
    CHECK(G1.h() == G2.h());
    CHECK(G1.h() == 4);
    CHECK(G1.elementary_divisors() == G2.elementary_divisors());
    auto recs = G1.min_norms(K);
    CHECK(BigInt(static_cast<long>(recs.size())) == G1.h());
    BigRat mk = minkowski_bound(K);
    bool saw_one = false;
    for (auto& r : recs) {
        CHECK(BigRat(r.min_norm) <= mk);
        if (r.min_norm == 1) saw_one = true;
    }
    CHECK(saw_one);
}

TEST_CASE("type norm image subgroup") {
    const CMField& K = zeta5();
    Rng rng(0);
    auto G = ClassGroup::compute(K, rng);
    auto tn = G.type_norm_image(K, K.cm_types()[0]);
    CHECK(tn.order == 1);
}

TEST_CASE("principality test examples") {
    const CMField& K = zeta5();
    FracIdeal two = ideal_principal(K, NFElement::from_int(2));
    auto g = ideal_principal_gen(K, two);
    REQUIRE(g.has_value());
    CHECK(abs(K.norm(*g)) == 16);
    auto s11 = split_prime(K, 11);
    auto g11 = ideal_principal_gen(K, s11[0].I);
    REQUIRE(g11.has_value());
    CHECK(abs(K.norm(*g11)) == 11);
}
