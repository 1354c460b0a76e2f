#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "g2cm/fieldenum.hpp"

using namespace g2cm;

TEST_CASE("B = 125 gives exactly Q(zeta5)") {
    auto chars = enumerate_characters(125);
    REQUIRE(chars.size() == 1);
    CHECK(chars[0].conductor == 5);
    CHECK(chars[0].disc_K == 125);
    ZPoly p = defining_poly_from_character(chars[0]);
    CMField K = CMField::make(p);
    CHECK(K.disc() == 125);
    CHECK(K.torsion_order() == 10);
}

TEST_CASE("45 fields up to four million") {
    auto chars = enumerate_characters(4000000);
    CHECK(chars.size() == 45);
    bool has125 = false, has8000 = false;
    for (auto& c : chars) {
        if (c.disc_K == 125) has125 = true;
        if (c.disc_K == 8000) {
            has8000 = true;
            CHECK(c.conductor == 40);
        }
    }
    CHECK(has125);
    CHECK(has8000);
    for (size_t i = 0; i + 1 < chars.size(); ++i) CHECK(chars[i].disc_K <= chars[i + 1].disc_K);
}

TEST_CASE("period polynomials verify for the smallest fields") {
    auto chars = enumerate_characters(40000);
    std::set<long> discs;
    for (auto& c : chars) {
        ZPoly p = defining_poly_from_character(c);
        CMField K = CMField::make(p);
        CHECK(K.disc() == c.disc_K);
        CHECK(K.is_cyclic());
        CHECK(K.subfield_F().disc_F == 5);
        NFElement s = K.sqrt_discF();
        NFElement s2 = K.mul(s, s);
        CHECK(s2.pw[0] == 5);
        CHECK(s2.pw[1] == 0);
        discs.insert(static_cast<long>(c.disc_K.get_si()));
    }
    CHECK(discs.count(125) == 1);
    CHECK(discs.count(8000) == 1);
    CHECK(discs.count(18000) == 1);
}

TEST_CASE("disc-8000 field matches x^4+10x^2+20") {
    auto chars = enumerate_characters(8000);
    REQUIRE(chars.size() == 2);
    CHECK(chars[1].disc_K == 8000);
    ZPoly p = defining_poly_from_character(chars[1]);
    CMField K = CMField::make(p);
    CHECK(K.disc() == 8000);
    ZPoly target(std::vector<BigInt>{20, 0, 10, 0, 1});
    Rng rng(0);
    CMField K2 = CMField::make(target, rng);
    CHECK(K2.disc() == K.disc());
    CHECK(K2.subfield_F().disc_F == K.subfield_F().disc_F);
}

TEST_CASE("brute-force completeness below 1e5") {
    auto chars = enumerate_characters(100000);
    std::set<std::string> enumerated;
    for (auto& c : chars) enumerated.insert(c.disc_K.get_str());
    std::set<std::string> brute;
    for (long U = -80; U <= 0; ++U) {
        for (long V = -35; V <= 35; ++V) {
            if (((U - V) % 2) != 0) continue;
            if (!(U < 0 && U * U > 5 * V * V)) continue;
            BigInt c0 = BigInt(U) * U - 5 * BigInt(V) * V;
            if (mod_floor(c0, 4) != 0) continue;
            ZPoly f(std::vector<BigInt>{c0 / 4, 0, -BigInt(U), 0, 1});
            try {
                Rng rng(1);
                CMField K = CMField::make(f, rng);
                if (!K.is_cyclic()) continue;
                if (K.subfield_F().disc_F != 5) continue;
                if (K.disc() > 100000) continue;
                brute.insert(K.disc().get_str());
            } catch (const Error&) {
                continue;
            }
        }
    }
    for (auto& d : brute) CHECK(enumerated.count(d) == 1);
    CHECK(brute.count("125") == 1);
    CHECK(brute.count("8000") == 1);
    MESSAGE("brute-force found ", brute.size(), " of ", enumerated.size(), " fields");
}
