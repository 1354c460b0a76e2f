#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "g2cm/report.hpp"

using namespace g2cm;
using nlohmann::json;

TEST_CASE("pipeline at disc bound 125: one dossier, all checks pass") {
    PipelineConfig cfg;
    cfg.disc_bound = 125;
    cfg.prec = 192;
    cfg.jobs = 1;
    auto res = run_pipeline(cfg);
    REQUIRE(res.dossiers.size() == 1);
    const json& d = res.dossiers[0];
    INFO(d.dump(1));
    REQUIRE(!d.contains("error"));
    CHECK(d["disc_K"] == "125");
    CHECK(d["h_K"] == "1");
    CHECK(d["w_K"] == 10);
    CHECK(d.value("good_reduction_candidate", false));
    CHECK(!d.value("violation", true));
    CHECK(!d.value("undecided", true));
    CHECK(res.exit_code == 0);
    // four types with one point each, all distinct-reduced within type
    REQUIRE(d["types"].size() == 4);
    for (auto& t : d["types"]) {
        CHECK(t["polarizable_classes"] == 1);
        CHECK(t["H0_order"] == "1");
        CHECK(t["distinct_reduced_points"] == true);
        REQUIRE(t["points"].size() == 1);
        auto& p = t["points"][0];
        CHECK(p["ineq"]["y1y2_le_43detY"] == "pass");
        CHECK(p["ineq"]["detY_ge_9_16"] == "pass");
        CHECK(p["ineq"]["detY_ge_9_8"] == "fail");  // the recorded discrepancy
        CHECK(p["ineq"]["z12_ge_23_sqrtD"] == "pass");
        CHECK(p["ineq"]["trY_le_bound"] == "pass");
        CHECK(p["chi10_lower_bound"] == "pass");
        CHECK(p["s3_spot_check_violations"] == 0);
    }
    // heights present with certified lower bound
    REQUIRE(d.contains("heights"));
    CHECK(d["heights"][0]["lower_bound_ok"] == "pass");
    // class polynomial of degree 1 with the vanishing invariants
    CHECK(d["orbits"][0]["integral_invariants"] == true);
    CHECK(d["orbits"][0]["class_poly_j1"][0] == "0");
    // analytic block
    CHECK(d["analytic"]["w_K"] == 10);
    CHECK(d["analytic"]["smoothed_bounds"].size() == 3);
    for (auto& e : d["analytic"]["smoothed_bounds"]) CHECK(e["all_bounded"] == true);
    CHECK(d["analytic"]["fourier_sandwich"]["sandwich_left"] == "pass");
    CHECK(d["analytic"]["fourier_sandwich"]["sandwich_right"] == "pass");
}

TEST_CASE("pipeline caching: rerun is byte-identical") {
    std::string cache = "/tmp/g2cm_cache_test";
    std::filesystem::remove_all(cache);
    PipelineConfig cfg;
    cfg.disc_bound = 125;
    cfg.jobs = 1;
    cfg.cache_dir = cache;
    auto r1 = run_pipeline(cfg);
    auto r2 = run_pipeline(cfg);
    CHECK(r1.dossiers[0].dump() == r2.dossiers[0].dump());
    std::filesystem::remove_all(cache);
}

TEST_CASE("pipeline on the disc-8000 field: shortlist flag and two orbits") {
    PipelineConfig cfg;
    cfg.disc_bound = 8000;
    cfg.prec = 192;
    cfg.prec_cap = 2048;
    cfg.jobs = 2;
    cfg.with_analytic = false;  // covered elsewhere; keep the test fast
    auto res = run_pipeline(cfg);
    REQUIRE(res.dossiers.size() == 2);
    const json& d = res.dossiers[1];
    INFO(d.dump(1));
    REQUIRE(!d.contains("error"));
    CHECK(d["disc_K"] == "8000");
    CHECK(d["h_K"] == "2");
    CHECK(d.value("good_reduction_candidate", false));
    // two Galois orbits of size 1 under each type
    CHECK(d["types"][0]["orbit_count"] == 2);
    // one of the orbits carries the published integers
    bool found = false;
    for (auto& orb : d["orbits"]) {
        if (orb.contains("class_poly_j1") && orb["class_poly_j1"][0] == "-183708000")
            found = true;
    }
    CHECK(found);
}
