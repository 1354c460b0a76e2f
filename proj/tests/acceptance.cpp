// Acceptance suite: runs every top-level requirement end to end and prints
// one PASS/FAIL line per criterion. Exit code = number of failures.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "g2cm/report.hpp"

using namespace g2cm;
using nlohmann::json;

namespace {

int failures = 0;

void line(int idx, bool pass, const std::string& detail) {
    std::printf("CRITERION %2d: %s  %s\n", idx, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double secs_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

int main() {
    auto wall0 = std::chrono::steady_clock::now();
    std::string outdir = "acceptance_out";
    std::filesystem::create_directories(outdir);

    // ---------- criterion 1: field enumeration ----------
    std::vector<EnumeratedField> fields;
    {
        auto t0 = std::chrono::steady_clock::now();
        fields = enumerate_fields(4000000);
        double dt = secs_since(t0);
        bool has125 = false, has8000 = false;
        for (auto& f : fields) {
            if (f.disc_K == 125) has125 = true;
            if (f.disc_K == 8000) has8000 = true;
        }
        emit_fields_jsonl(fields, outdir + "/fields.jsonl");
        line(1, fields.size() == 45 && has125 && has8000 && dt < 300,
             "fields=" + std::to_string(fields.size()) + " (want 45) disc125=" +
                 (has125 ? "y" : "n") + " disc8000=" + (has8000 ? "y" : "n") + " in " +
                 fmt(dt) + "s (<300s)");
    }

    // ---------- criterion 2: exact invariants for disc 8000 ----------
    {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        std::string detail;
        try {
            Rng rng(0);
            CMField K = CMField::make(ZPoly(std::vector<BigInt>{20, 0, 10, 0, 1}), rng);
            auto search = find_polarizations(K, K.cm_types()[0], ideal_one(K), 4, 700);
            auto e = symplectic_basis(K, search.triples.front());
            PeriodPoint r = reduce_to_F2(period_matrix(K, e, search.triples.front().type, 700));
            ThetaVector t = theta_constants(r, 700);
            InvariantTriple inv = igusa_invariants(t);
            auto cp = class_polynomials({inv}, 1);
            ok = cp.h1.size() == 1 && cp.h1[0] == -BigRat(BigInt("183708000")) &&
                 cp.h2[0] == -BigRat(BigInt("474590099025000000")) &&
                 cp.h3[0] == -BigRat(BigInt("25021491747613593750000000"));
            detail = std::string(ok ? "recognized the three published integers" : "MISMATCH") +
                     " at 700 bits in " + fmt(secs_since(t0)) + "s (<600s)";
        } catch (const std::exception& ex) {
            detail = std::string("exception: ") + ex.what();
        }
        line(2, ok && secs_since(t0) < 600, detail);
    }

    // ---------- criterion 3: cross-oracle invariants for Q(zeta5) ----------
    {
        bool ok = false;
        std::string detail;
        try {
            Rng rng(0);
            CMField K = CMField::make(ZPoly(std::vector<BigInt>{1, 1, 1, 1, 1}), rng);
            auto search = find_polarizations(K, K.cm_types()[0], ideal_one(K), 4, 200);
            auto e = symplectic_basis(K, search.triples.front());
            PeriodPoint r = reduce_to_F2(period_matrix(K, e, search.triples.front().type, 200));
            ThetaVector t = theta_constants(r, 200);
            InvariantTriple inv = igusa_invariants(t);
            std::vector<BigRat> sex{BigRat(0), BigRat(1), BigRat(0), BigRat(0),
                                    BigRat(0), BigRat(0), BigRat(1)};
            auto ic = ic_from_sextic_exact(sex);
            auto js = streng_js(ic);
            ok = inv.j1.re.contains_rat(js[0]) && inv.j1.im.contains_zero() &&
                 inv.j2.re.contains_rat(js[1]) && inv.j3.re.contains_rat(js[2]);
            detail = "analytic balls contain the exact algebraic values at 200 bits";
        } catch (const std::exception& ex) {
            detail = std::string("exception: ") + ex.what();
        }
        line(3, ok, detail);
    }

    // ---------- shared full pipeline run (criteria 4, 5, 6, 8, 10) ----------
    PipelineResult res;
    double pipeline_secs = 0;
    {
        auto t0 = std::chrono::steady_clock::now();
        PipelineConfig cfg;
        cfg.disc_bound = 4000000;
        cfg.prec = 192;
        cfg.prec_cap = 4096;
        cfg.jobs = std::max(2u, std::thread::hardware_concurrency());
        res = run_pipeline(cfg);
        pipeline_secs = secs_since(t0);
        emit_report(res, outdir, "all");
    }

    // ---------- criterion 4: inequality suite ----------
    {
        long points = 0, viol_acd = 0, undecided = 0, det916_fail = 0, det98_false = 0;
        for (auto& d : res.dossiers) {
            if (!d.contains("types")) continue;
            for (auto& t : d["types"]) {
                if (!t.contains("points")) continue;
                for (auto& p : t["points"]) {
                    if (!p.contains("ineq")) continue;
                    ++points;
                    auto& iq = p["ineq"];
                    for (const char* k : {"y1y2_le_43detY", "z12_ge_23_sqrtD", "trY_le_bound"}) {
                        if (iq[k] == "fail") ++viol_acd;
                        if (iq[k] == "undecided") ++undecided;
                    }
                    if (iq["detY_ge_9_16"] != "pass") ++det916_fail;
                    if (iq["detY_ge_9_8"] == "fail") ++det98_false;
                }
            }
        }
        bool ok = res.dossiers.size() == 45 && points > 0 && viol_acd == 0 &&
                  undecided == 0 && det916_fail == 0;
        line(4, ok,
             std::to_string(points) + " reduced points; (a)(c)(d) violations=" +
                 std::to_string(viol_acd) + " undecided=" + std::to_string(undecided) +
                 "; detY>=9/16 failures=" + std::to_string(det916_fail) +
                 "; detY>=9/8 false at " + std::to_string(det98_false) +
                 " points (reported; known discrepancy)");
    }

    // ---------- criterion 5: chi10 lower bound + normalization study ----------
    {
        long points = 0, fails = 0, undecided = 0;
        std::ofstream study(outdir + "/normalization_study.csv");
        study << "disc_K,type_a,type_b,chi10_paper,chi10_classical,bound_rhs,pass\n";
        for (auto& d : res.dossiers) {
            if (!d.contains("types")) continue;
            for (auto& t : d["types"]) {
                if (!t.contains("points")) continue;
                for (auto& p : t["points"]) {
                    if (!p.contains("chi10_lower_bound")) continue;
                    ++points;
                    if (p["chi10_lower_bound"] == "fail") ++fails;
                    if (p["chi10_lower_bound"] == "undecided") ++undecided;
                    study << d.value("disc_K", "?") << "," << t["type"][0] << ","
                          << t["type"][1] << "," << p["chi10_abs"].value("mid_d", 0.0) << ","
                          << p["chi10_abs_classical"].value("mid_d", 0.0) << ","
                          << p["chi10_bound_rhs"].value("mid_d", 0.0) << ","
                          << p["chi10_lower_bound"].get<std::string>() << "\n";
                }
            }
        }
        line(5, points > 0 && fails == 0 && undecided == 0,
             std::to_string(points) + " points, chi10 bound failures=" + std::to_string(fails) +
                 " undecided=" + std::to_string(undecided) + "; study table written");
    }

    // ---------- criterion 6: height bounds for the two curves ----------
    {
        bool ok125 = false, ok8000 = false, finalbh_all = true;
        for (auto& d : res.dossiers) {
            std::string disc = d.value("disc_K", "");
            if ((disc != "125" && disc != "8000") || !d.contains("heights")) continue;
            for (auto& h : d["heights"]) {
                bool lb = h["lower_bound_ok"] == "pass";
                bool fb = true;
                for (auto& v : h["hinf_le_finalbh"])
                    if (v != "pass") fb = false;
                if (!fb) finalbh_all = false;
                if (disc == "125" && lb) ok125 = true;
                if (disc == "8000" && lb) ok8000 = true;
            }
        }
        line(6, ok125 && ok8000,
             std::string("faltings >= lower bound: disc125=") + (ok125 ? "y" : "n") +
                 " disc8000=" + (ok8000 ? "y" : "n") + "; h_inf <= finalbh RHS " +
                 (finalbh_all ? "holds" : "violated") + " (informational below 9.3e7)");
    }

    // ---------- criterion 7: constants reproduction ----------
    {
        auto t0 = std::chrono::steady_clock::now();
        auto r4 = chandee_constant(4, BigRat(1, 2), 160);
        auto rz = chandee_zeta_aggregate(160);
        double dt = secs_since(t0);
        bool exps = r4.delta_exp == BigRat(3, 16) && r4.t_exp == BigRat(3, 4) &&
                    rz.delta_exp == BigRat(3, 16) && rz.t_exp == BigRat(3, 4);
        bool c263 = r4.constant.lt_certain(RealBall::exact_int(263, 160)).value_or(false);
        bool c839 = rz.constant.lt_certain(RealBall::exact_int(839, 160)).value_or(false);
        bool po263 =
            r4.constant_primes_only.lt_certain(RealBall::exact_int(263, 160)).value_or(false);
        bool po839 =
            rz.constant_primes_only.lt_certain(RealBall::exact_int(839, 160)).value_or(false);
        line(7, exps && c263 && c839 && dt < 1.0,
             "exponents 3/16 & 3/4 " + std::string(exps ? "ok" : "WRONG") +
                 "; full worst-case constants " + fmt(r4.constant.mid_d()) + " / " +
                 fmt(rz.constant.mid_d()) + " vs 263 / 839 " +
                 (c263 && c839 ? "ok" : "EXCEED") + "; primes-only evaluation gives " +
                 fmt(r4.constant_primes_only.mid_d()) + " / " +
                 fmt(rz.constant_primes_only.mid_d()) +
                 (po263 && po839 ? " (within both)" : "") + " in " + fmt(dt) + "s");
    }

    // ---------- criterion 8: smoothed-sum bounds ----------
    {
        long fields_ok = 0, fields_bad = 0, sandwich_bad = 0;
        for (auto& d : res.dossiers) {
            if (!d.contains("analytic")) {
                ++fields_bad;
                continue;
            }
            bool all = true;
            for (auto& e : d["analytic"]["smoothed_bounds"])
                if (e["all_bounded"] != true || e["undecided"] == true) all = false;
            auto& fs = d["analytic"]["fourier_sandwich"];
            if (fs["sandwich_left"] != "pass" || fs["sandwich_right"] != "pass") ++sandwich_bad;
            if (all)
                ++fields_ok;
            else
                ++fields_bad;
        }
        line(8, fields_ok == 45 && sandwich_bad == 0,
             "S-bounds hold on " + std::to_string(fields_ok) +
                 "/45 fields (eps in {1/10,1/2,1}); Fourier sandwich failures=" +
                 std::to_string(sandwich_bad));
    }

    // ---------- criterion 9: elementary scans ----------
    {
        auto t0 = std::chrono::steady_clock::now();
        auto bad = delta_lemma_scan(10, 1000000);
        double dt = secs_since(t0);
        auto F = real_quad_data(5);
        auto mb = main_theorem_bound(F, BigRat(0), BigRat(2), 160);
        bool first_branch = mb.branch == 0;
        bool value_ok =
            std::abs(mb.log_bound.mid_d() - std::exp(64.0)) < 1e-3 * std::exp(64.0);
        line(9, bad.empty() && dt < 60 && first_branch && value_ok,
             "delta-lemma counterexamples=" + std::to_string(bad.size()) + " in " + fmt(dt) +
                 "s (<60s); log-bound = e^64 first branch " +
                 (first_branch && value_ok ? "reproduced" : "WRONG"));
    }

    // ---------- criterion 10: good-reduction shortlist ----------
    {
        std::vector<std::string> shortlist;
        for (auto& d : res.dossiers)
            if (d.value("good_reduction_candidate", false))
                shortlist.push_back(d.value("disc_K", "?"));
        bool ok = shortlist.size() == 2 &&
                  std::find(shortlist.begin(), shortlist.end(), "125") != shortlist.end() &&
                  std::find(shortlist.begin(), shortlist.end(), "8000") != shortlist.end();
        std::string lst;
        for (auto& s : shortlist) lst += s + " ";
        line(10, ok && res.summary.value("errors", 1) == 0,
             "shortlist = { " + lst + "}; pipeline " + fmt(pipeline_secs) + "s, errors=" +
                 std::to_string(res.summary.value("errors", -1)) + ", pipeline exit=" +
                 std::to_string(res.exit_code));
    }

    std::printf("TOTAL: %d failed criterion(s), wall %.1fs; artifacts in %s/\n", failures,
                secs_since(wall0), outdir.c_str());
    return failures;
}
