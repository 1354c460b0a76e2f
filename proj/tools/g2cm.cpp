// g2cm: certified pipeline for genus-2 CM points over cyclic quartic fields
// containing a fixed real quadratic field, with inequality/bound verification.
#include <CLI11.hpp>

#include <iostream>
#include <thread>

#include "g2cm/report.hpp"

using namespace g2cm;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string disc_bound = "4000000";
    std::string disc_F = "5";
    long prec = 192;
    long prec_cap = 4096;
    std::uint64_t seed = 0;
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    std::string out_dir = "out";
    std::string format = "all";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--disc-bound", o.disc_bound, "discriminant bound (decimal string)");
    cmd->add_option("--disc-F", o.disc_F, "real quadratic discriminant (default 5)");
    cmd->add_option("--prec", o.prec, "starting precision in bits");
    cmd->add_option("--prec-cap", o.prec_cap, "precision cap in bits");
    cmd->add_option("--seed", o.seed, "deterministic seed");
    cmd->add_option("--jobs", o.jobs, "worker threads");
    cmd->add_option("--out-dir", o.out_dir, "output directory");
    cmd->add_option("--format", o.format, "report format: json|csv|svg|all");
}

PipelineConfig to_config(const CommonOpts& o) {
    PipelineConfig cfg;
    cfg.disc_bound = BigInt(o.disc_bound);
    cfg.disc_F = BigInt(o.disc_F);
    cfg.prec = o.prec;
    cfg.prec_cap = o.prec_cap;
    cfg.seed = o.seed;
    cfg.jobs = std::max(1, o.jobs);
    return cfg;
}

int run_and_report(const PipelineConfig& cfg, const CommonOpts& o, bool emit) {
    auto res = run_pipeline(cfg);
    std::cout << res.summary.dump(1) << "\n";
    if (emit) emit_report(res, o.out_dir, o.format);
    return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified genus-2 CM verification pipeline"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string fields_out = "fields.jsonl";
    std::string suite = "all";
    std::string h0 = "0";
    std::string gammaF = "2";

    auto* c_fields = app.add_subcommand("fields", "enumerate fields, write JSONL");
    add_common(c_fields, o);
    c_fields->add_option("--out", fields_out, "output JSONL path");

    auto* c_classgroup = app.add_subcommand("classgroup", "class group table");
    add_common(c_classgroup, o);
    auto* c_triples = app.add_subcommand("triples", "polarizations per field/type");
    add_common(c_triples, o);
    auto* c_reduce = app.add_subcommand("reduce", "reduced period matrices");
    add_common(c_reduce, o);
    auto* c_inv = app.add_subcommand("invariants", "invariants and class polynomials");
    add_common(c_inv, o);
    auto* c_heights = app.add_subcommand("heights", "Faltings heights");
    add_common(c_heights, o);

    auto* c_verify = app.add_subcommand("verify", "run a verification suite");
    add_common(c_verify, o);
    c_verify->add_option("--suite", suite, "inequalities|analytic|constants|all");

    auto* c_bound = app.add_subcommand("bound", "main-theorem discriminant bound");
    c_bound->add_option("--h0", h0, "h0 term (decimal rational, e.g. 1/2)");
    c_bound->add_option("--gammaF", gammaF, "Euler-Kronecker bound for F");
    c_bound->add_option("--disc-F", o.disc_F, "real quadratic discriminant");

    auto* c_report = app.add_subcommand("report", "full pipeline with reports");
    add_common(c_report, o);
    auto* c_run = app.add_subcommand("run", "full pipeline (alias of report)");
    add_common(c_run, o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(c_fields)) {
            auto fs = enumerate_fields(BigInt(o.disc_bound), BigInt(o.disc_F));
            emit_fields_jsonl(fs, fields_out);
            std::cout << fs.size() << " fields -> " << fields_out << "\n";
            return 0;
        }
        if (app.got_subcommand(c_bound)) {
            auto F = real_quad_data(BigInt(o.disc_F));
            BigRat h0q(h0);
            h0q.canonicalize();
            BigRat gFq(gammaF);
            gFq.canonicalize();
            auto mb = main_theorem_bound(F, h0q, gFq, 192);
            json out;
            out["log_bound"] = ball_json(mb.log_bound);
            out["branch"] = mb.branch;
            out["branch_values"] = {ball_json(mb.branches[0]), ball_json(mb.branches[1]),
                                    ball_json(mb.branches[2])};
            out["note"] = mb.branch == 0 ? "first branch: disc bound is exp(exp(64))" : "";
            std::cout << out.dump(1) << "\n";
            return 0;
        }
        PipelineConfig cfg = to_config(o);
        if (app.got_subcommand(c_classgroup)) {
            cfg.with_inequalities = cfg.with_heights = cfg.with_invariants = false;
            cfg.with_analytic = false;
            return run_and_report(cfg, o, true);
        }
        if (app.got_subcommand(c_triples) || app.got_subcommand(c_reduce)) {
            cfg.with_heights = cfg.with_invariants = false;
            cfg.with_analytic = false;
            return run_and_report(cfg, o, true);
        }
        if (app.got_subcommand(c_inv)) {
            cfg.with_analytic = false;
            cfg.with_heights = false;
            return run_and_report(cfg, o, true);
        }
        if (app.got_subcommand(c_heights)) {
            cfg.with_analytic = false;
            return run_and_report(cfg, o, true);
        }
        if (app.got_subcommand(c_verify)) {
            if (suite == "constants") {
                json out;
                auto r4 = chandee_constant(4, BigRat(1, 2), 160);
                out["chandee_d4"] = {{"constant", ball_json(r4.constant)},
                                     {"constant_primes_only",
                                      ball_json(r4.constant_primes_only)},
                                     {"delta_exp", r4.delta_exp.get_str()},
                                     {"t_exp", r4.t_exp.get_str()}};
                auto rz = chandee_zeta_aggregate(160);
                out["zeta_aggregate"] = {{"constant", ball_json(rz.constant)},
                                         {"constant_primes_only",
                                          ball_json(rz.constant_primes_only)},
                                         {"delta_exp", rz.delta_exp.get_str()},
                                         {"t_exp", rz.t_exp.get_str()}};
                auto bad = delta_lemma_scan(10, 1000000);
                out["delta_lemma_counterexamples"] = bad;
                std::cout << out.dump(1) << "\n";
                bool pass = bad.empty() &&
                            r4.constant.lt_certain(RealBall::exact_int(263, 160)).value_or(false);
                return pass ? 0 : 3;
            }
            if (suite == "inequalities") {
                cfg.with_analytic = false;
                return run_and_report(cfg, o, true);
            }
            if (suite == "analytic") {
                cfg.with_inequalities = false;
                cfg.with_invariants = false;
                cfg.with_heights = false;
                return run_and_report(cfg, o, true);
            }
            return run_and_report(cfg, o, true);
        }
        if (app.got_subcommand(c_report) || app.got_subcommand(c_run))
            return run_and_report(cfg, o, true);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
