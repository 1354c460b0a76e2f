#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "g2cm/ball.hpp"
#include "g2cm/intmatrix.hpp"
#include "g2cm/zpoly.hpp"

using namespace g2cm;

namespace {
IntMatrix mat(int r, int c, std::initializer_list<long> v) {
    IntMatrix m(r, c);
    auto it = v.begin();
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = BigInt(*it++);
    return m;
}

ZPoly poly(std::initializer_list<long> asc) {
    std::vector<BigInt> c;
    for (long v : asc) c.emplace_back(v);
    return ZPoly(std::move(c));
}
}  // namespace

TEST_CASE("hnf identity and fixed points") {
    IntMatrix id = IntMatrix::identity(4);
    CHECK(hnf(id) == id);
    IntMatrix m = mat(2, 2, {2, 1, 0, 1});
    CHECK(hnf(m) == m);
}

TEST_CASE("hnf invariant under unimodular column action") {
    Rng rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        IntMatrix m(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m.at(i, j) = rng.in_range(-9, 9);
        if (m.det() == 0) continue;
        IntMatrix u = IntMatrix::identity(4);
        for (int k = 0; k < 12; ++k) {
            int a = rng.in_range(0, 3), b = rng.in_range(0, 3);
            if (a == b) continue;
            long q = rng.in_range(-3, 3);
            for (int r = 0; r < 4; ++r) u.at(r, a) += q * u.at(r, b);
        }
        CHECK(hnf(m * u) == hnf(m));
        CHECK(hnf(hnf(m)) == hnf(m));  // idempotence
    }
}

TEST_CASE("snf spec examples") {
    auto r1 = snf(IntMatrix::identity(2));
    CHECK(r1.d == IntMatrix::identity(2));

    auto r2 = snf(mat(2, 2, {2, 0, 0, 3}));
    CHECK(r2.d == mat(2, 2, {1, 0, 0, 6}));
    CHECK(abs(r2.left.det()) == 1);
    CHECK(abs(r2.right.det()) == 1);
    CHECK(r2.left * mat(2, 2, {2, 0, 0, 3}) * r2.right == r2.d);

    auto r3 = snf(mat(2, 2, {4, 2, 2, 4}));
    CHECK(r3.d == mat(2, 2, {2, 0, 0, 6}));
    CHECK(r3.left * mat(2, 2, {4, 2, 2, 4}) * r3.right == r3.d);
}

TEST_CASE("snf unimodularity on random square inputs") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        IntMatrix m(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m.at(i, j) = rng.in_range(-20, 20);
        auto r = snf(m);
        CHECK(abs(r.left.det()) == 1);
        CHECK(abs(r.right.det()) == 1);
        CHECK(r.left * m * r.right == r.d);
        for (int i = 0; i + 1 < 3; ++i)
            if (r.d.at(i + 1, i + 1) != 0) CHECK(r.d.at(i + 1, i + 1) % r.d.at(i, i) == 0);
    }
}

TEST_CASE("factor_mod_p spec examples") {
    ZPoly f = poly({1, 1, 1, 1, 1});  // x^4+x^3+x^2+x+1
    auto f11 = factor_mod_p(f, 11);
    CHECK(f11.size() == 4);
    for (auto& [q, m] : f11) {
        CHECK(q.degree() == 1);
        CHECK(m == 1);
    }
    auto f2 = factor_mod_p(f, 2);
    CHECK(f2.size() == 1);
    CHECK(f2[0].first.degree() == 4);
    CHECK(f2[0].second == 1);

    auto g2 = factor_mod_p(poly({1, 0, 1}), 2);  // x^2+1 = (x+1)^2 mod 2
    CHECK(g2.size() == 1);
    CHECK(g2[0].first.degree() == 1);
    CHECK(g2[0].second == 2);

    CHECK_THROWS_AS(factor_mod_p(f, 15), CompositeModulus);
}

TEST_CASE("factor_mod_p degree sums on random inputs") {
    Rng rng(3);
    for (long p : {2L, 3L, 5L, 13L}) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<BigInt> c(6);
            for (auto& v : c) v = rng.in_range(-30, 30);
            c[5] = 1;
            ZPoly f(std::move(c));
            auto fac = factor_mod_p(f, p, trial);
            int degsum = 0;
            ZPoly prod = ZPoly::constant(1);
            for (auto& [q, m] : fac) {
                degsum += q.degree() * m;
                for (int i = 0; i < m; ++i) prod = prod * q;
            }
            CHECK(degsum == 5);
            ZPoly diff = prod - f;
            for (int i = 0; i <= diff.degree(); ++i) CHECK(mod_floor(diff.coeff(i), p) == 0);
        }
    }
}

TEST_CASE("ball_exp_pi_i examples") {
    mpfr_prec_t prec = 128;
    ComplexBall zero(prec);
    auto e0 = ball_exp_pi_i(zero);
    CHECK(e0.re.contains_int(1));
    CHECK(e0.im.contains_zero());
    CHECK(e0.re.rad_d() < 1e-30);

    auto e1 = ball_exp_pi_i(ComplexBall::exact_int(1, 0, prec));
    CHECK(e1.re.contains_int(-1));
    CHECK(e1.im.contains_zero());

    auto ei = ball_exp_pi_i(ComplexBall::exact_int(0, 1, prec));
    CHECK(ei.im.contains_zero());
    CHECK(ei.re.mid_d() == doctest::Approx(0.0432139182637722).epsilon(1e-12));
    CHECK(ei.re.lo_d() <= 0.04321391826377225);
    CHECK(ei.re.hi_d() >= 0.04321391826377224);
}

TEST_CASE("ball containment against exact rational oracle") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        BigRat x(BigInt(rng.in_range(-50, 50)), BigInt(rng.in_range(1, 30)));
        BigRat y(BigInt(rng.in_range(-50, 50)), BigInt(rng.in_range(1, 30)));
        x.canonicalize();
        y.canonicalize();
        mpfr_prec_t prec = 24;  // deliberately low
        RealBall bx = RealBall::exact_rat(x, prec);
        RealBall by = RealBall::exact_rat(y, prec);
        RealBall r = (bx + by) * bx - by * by * bx + bx;
        BigRat exact = (x + y) * x - y * y * x + x;
        CHECK(r.contains_rat(exact));
        if (y != 0) {
            RealBall q = bx / by;
            CHECK(q.contains_rat(x / y));
        }
    }
}

TEST_CASE("ball transcendental functions") {
    mpfr_prec_t prec = 96;
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        double v = 0.01 + 3.0 * (rng.below(1000) / 1000.0);
        RealBall b = RealBall::from_double(v, prec);
        CHECK(b.sqrt().mid_d() == doctest::Approx(std::sqrt(v)).epsilon(1e-12));
        CHECK(b.exp().mid_d() == doctest::Approx(std::exp(v)).epsilon(1e-12));
        CHECK(b.log().mid_d() == doctest::Approx(std::log(v)).epsilon(1e-12));
        CHECK((b.sin().square() + b.cos().square()).contains_int(1));
    }
}

TEST_CASE("complex_roots certifies quartic roots") {
    ZPoly f = poly({1, 1, 1, 1, 1});
    auto roots = complex_roots(f, 200);
    REQUIRE(roots.size() == 4);
    for (auto& r : roots) {
        auto v = f.eval_ball(r, 260);
        CHECK(v.contains_zero());
        CHECK(r.rad_d() < 1e-55);
    }
}

TEST_CASE("factor_z splits products") {
    ZPoly a = poly({1, 0, 1});   // x^2+1
    ZPoly b = poly({-2, 0, 1});  // x^2-2
    ZPoly c = poly({1, 1});      // x+1
    auto fa = factor_z(a * b * c * c);
    int total = 0;
    bool sawsq = false;
    for (auto& [q, m] : fa) {
        total += q.degree() * m;
        if (q == c) {
            CHECK(m == 2);
            sawsq = true;
        }
    }
    CHECK(total == 6);
    CHECK(fa.size() == 3);
    CHECK(sawsq);
    CHECK(is_irreducible_z(poly({1, 1, 1, 1, 1})));
    CHECK(is_irreducible_z(poly({20, 0, 10, 0, 1})));
    CHECK(!is_irreducible_z(a * b));
}

TEST_CASE("resultant and discriminant") {
    CHECK(poly_discriminant(poly({3, 5, 1})) == 25 - 12);
    CHECK(poly_discriminant(poly({1, 1, 1, 1, 1})) == 125);
    CHECK(poly_discriminant(poly({20, 0, 10, 0, 1})) == 128000);
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(ZPoly::cyclotomic(5) == poly({1, 1, 1, 1, 1}));
    CHECK(ZPoly::cyclotomic(8) == poly({1, 0, 0, 0, 1}));
    CHECK(ZPoly::cyclotomic(12) == poly({1, 0, -1, 0, 1}));
}

TEST_CASE("rng determinism") {
    Rng a(123), b(123);
    for (int i = 0; i < 10; ++i) CHECK(a.u64() == b.u64());
}
