#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "g2cm/siegel.hpp"

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

PeriodPoint zeta5_point(mpfr_prec_t prec) {
    const CMField& K = zeta5();
    auto search = find_polarizations(K, K.cm_types()[0], ideal_one(K), 4, prec);
    REQUIRE(!search.triples.empty());
    auto e = symplectic_basis(K, search.triples.front());
    return period_matrix(K, e, search.triples.front().type, prec);
}
}  // namespace

TEST_CASE("period matrix: symmetry and positivity for the zeta5 triple") {
    PeriodPoint p = zeta5_point(192);
    CHECK(p.det_y().sign_certain().value_or(0) == 1);
    CHECK(p.z1.im.sign_certain().value_or(0) == 1);
}

TEST_CASE("reduction of the zeta5 point matches the known fundamental values") {
    PeriodPoint p = zeta5_point(192);
    PeriodPoint r = reduce_to_F2(p);
    CHECK(std::abs(r.y1().mid_d() - 0.9510565162951535) < 1e-12);
    CHECK(std::abs(r.y2().mid_d() - 0.9510565162951535) < 1e-12);
    CHECK(std::abs(r.y12().mid_d() - 0.3632712640026804) < 1e-12);
    CHECK(std::abs(std::abs(r.x1().mid_d()) - 0.3090169943749474) < 1e-12);
    CHECK(std::abs(std::abs(r.x12().mid_d()) - 0.5) < 1e-12);
    PeriodPoint again = apply_symplectic(r.reduction, p);
    CHECK((again.z1 - r.z1).contains_zero());
    CHECK((again.z12 - r.z12).contains_zero());
    CHECK((again.z2 - r.z2).contains_zero());
    CHECK(std::abs(r.det_y().mid_d() - 0.7725424859373686) < 1e-12);
}

TEST_CASE("idempotence: reducing a reduced point changes nothing") {
    PeriodPoint r = reduce_to_F2(zeta5_point(192));
    PeriodPoint r2 = reduce_to_F2(r);
    CHECK(r2.reduction == r.reduction);
    CHECK((r2.z1 - r.z1).contains_zero());
}

TEST_CASE("round-trip: M * Z0 reduces back to Z0 for a generic point") {
    mpfr_prec_t prec = 192;
    PeriodPoint z;
    auto mk = [&](long re_u, long im_u) {
        return ComplexBall{RealBall::exact_rat(BigRat(re_u, 1000000L), prec),
                           RealBall::exact_rat(BigRat(im_u, 1000000L), prec)};
    };
    z.z1 = mk(137000, 1113000);
    z.z12 = mk(71000, 253000);
    z.z2 = mk(-201000, 1319000);
    PeriodPoint z0 = reduce_to_F2(z);
    Rng rng(31);
    for (int t = 0; t < 6; ++t) {
        IntMatrix M = random_symplectic(rng, 5);
        PeriodPoint moved = apply_symplectic(M, z0);
        PeriodPoint back = reduce_to_F2(moved);
        CHECK((back.z1 - z0.z1).contains_zero());
        CHECK((back.z12 - z0.z12).contains_zero());
        CHECK((back.z2 - z0.z2).contains_zero());
    }
}

TEST_CASE("inequality suite on the zeta5 point") {
    PeriodPoint r = reduce_to_F2(zeta5_point(224));
    IneqReport rep = check_inequalities(r, 125, 1);
    CHECK(rep.y1y2_le_43detY.value_or(false));
    CHECK(rep.detY_ge_9_16.value_or(false));
    REQUIRE(rep.detY_ge_9_8.has_value());
    CHECK(!rep.detY_ge_9_8.value());  // det Y = 0.7725 < 9/8: the known discrepancy
    CHECK(rep.z12_ge_23_sqrtD.value_or(false));
    CHECK(rep.trY_le_bound.value_or(false));
}

TEST_CASE("random symplectic spot check finds no violation on reduced points") {
    PeriodPoint r = reduce_to_F2(zeta5_point(192));
    CHECK(s3_spot_check(r, 2000, 17) == 0);
}

TEST_CASE("s3 family is nonempty and symplectic") {
    CHECK(s3_family().size() >= 29);
}
