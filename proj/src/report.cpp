#include "g2cm/report.hpp"

#include <filesystem>
#include <fstream>

namespace g2cm {

using nlohmann::json;

void emit_fields_jsonl(const std::vector<EnumeratedField>& fields, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path);
    for (auto& ef : fields) {
        json j;
        json coeffs = json::array();
        for (int i = 0; i <= ef.poly.degree(); ++i) coeffs.push_back(ef.poly[i].get_str());
        j["poly"] = coeffs;
        j["disc_K"] = ef.disc_K.get_str();
        j["disc_F"] = ef.chi.disc_F.get_str();
        j["conductor_f"] = ef.chi.conductor.get_str();
        j["character_values"] = ef.chi.values;
        Rng rng(0);
        CMField K = CMField::make(ef.poly, rng);
        json basis = json::array();
        for (int i = 0; i < 4; ++i) {
            json row = json::array();
            for (int k = 0; k < 4; ++k) row.push_back(K.basis().at(i, k).get_str());
            basis.push_back(row);
        }
        j["integral_basis"] = basis;
        out << j.dump() << "\n";
    }
}

namespace {

double slack_of(const json& pt, const char* key) {
    if (!pt.contains("ineq")) return 0;
    return pt["ineq"][key].value("mid_d", 0.0);
}

void write_svg_scatter(const std::string& path, const std::string& title,
                       const std::vector<std::pair<double, double>>& pts) {
    // log-x scatter, minimal hand-rolled SVG
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path);
    double W = 640, H = 400, L = 70, B = 40;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (auto& [x, y] : pts) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    if (pts.empty()) {
        xmin = 1;
        xmax = 10;
        ymin = 0;
        ymax = 1;
    }
    if (ymin == ymax) {
        ymin -= 1;
        ymax += 1;
    }
    auto lx = [&](double x) {
        return L + (std::log(x) - std::log(xmin)) / (std::log(xmax) - std::log(xmin) + 1e-12) *
                       (W - L - 20);
    };
    auto ly = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - B - 30); };
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << W / 2 << "' y='18' text-anchor='middle' font-size='14'>" << title
        << "</text>\n";
    out << "<line x1='" << L << "' y1='" << H - B << "' x2='" << W - 20 << "' y2='" << H - B
        << "' stroke='black'/>\n";
    out << "<line x1='" << L << "' y1='" << H - B << "' x2='" << L << "' y2='30' stroke='black'/>\n";
    if (ymin < 0 && ymax > 0)
        out << "<line x1='" << L << "' y1='" << ly(0) << "' x2='" << W - 20 << "' y2='" << ly(0)
            << "' stroke='#cccccc'/>\n";
    out << "<text x='" << W / 2 << "' y='" << H - 8
        << "' text-anchor='middle' font-size='11'>|disc K| (log scale)</text>\n";
    out << "<text x='14' y='" << H / 2 << "' font-size='11' transform='rotate(-90 14 " << H / 2
        << ")'>slack</text>\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", ymin);
    out << "<text x='" << L - 4 << "' y='" << ly(ymin) << "' text-anchor='end' font-size='10'>"
        << buf << "</text>\n";
    std::snprintf(buf, sizeof buf, "%.3g", ymax);
    out << "<text x='" << L - 4 << "' y='" << ly(ymax) + 8
        << "' text-anchor='end' font-size='10'>" << buf << "</text>\n";
    for (auto& [x, y] : pts)
        out << "<circle cx='" << lx(x) << "' cy='" << ly(y) << "' r='3' fill='steelblue'/>\n";
    out << "</svg>\n";
}

}  // namespace

void emit_report(const PipelineResult& res, const std::string& out_dir,
                 const std::string& format) {
    std::filesystem::create_directories(out_dir);
    if (format == "json" || format == "all") {
        json full;
        full["summary"] = res.summary;
        full["fields"] = res.dossiers;
        std::ofstream out(out_dir + "/report.json");
        out << full.dump(1) << "\n";
    }
    if (format == "csv" || format == "all") {
        std::ofstream out(out_dir + "/summary.csv");
        out << "disc_K,conductor,h_K,elementary_divisors,minkowski_bound,w_K,"
               "polarizable_classes_t0,H0_order_t0,orbits_t0,good_reduction,ineq_ok,"
               "chi10_bound_ok,undecided,violation,faltings_first_orbit,seconds\n";
        for (auto& d : res.dossiers) {
            if (d.contains("error")) {
                out << d.value("disc_K", "?") << ",ERROR\n";
                continue;
            }
            std::string divs;
            for (auto& v : d["elementary_divisors"]) {
                if (!divs.empty()) divs += ";";
                divs += v.get<std::string>();
            }
            bool ineq_ok = true, chi_ok = true;
            if (d.contains("types"))
                for (auto& t : d["types"])
                    if (t.contains("points"))
                        for (auto& p : t["points"]) {
                            if (p.contains("ineq")) {
                                for (const char* k :
                                     {"y1y2_le_43detY", "detY_ge_9_16", "z12_ge_23_sqrtD",
                                      "trY_le_bound"})
                                    if (p["ineq"][k] != "pass") ineq_ok = false;
                            }
                            if (p.contains("chi10_lower_bound") &&
                                p["chi10_lower_bound"] != "pass")
                                chi_ok = false;
                        }
            std::string faltings = "";
            if (d.contains("heights") && !d["heights"].empty())
                faltings = std::to_string(
                    d["heights"][0]["faltings"].value("mid_d", 0.0));
            out << d.value("disc_K", "?") << "," << d.value("conductor", "?") << ","
                << d.value("h_K", "?") << "," << divs << "," << d.value("minkowski_bound", "?")
                << "," << d.value("w_K", 0) << ",";
            if (d.contains("types") && !d["types"].empty()) {
                out << d["types"][0].value("polarizable_classes", 0) << ","
                    << d["types"][0].value("H0_order", "?") << ","
                    << d["types"][0].value("orbit_count", 0) << ",";
            } else {
                out << ",,,";
            }
            out << (d.value("good_reduction_candidate", false) ? "yes" : "no") << ","
                << (ineq_ok ? "pass" : "FAIL") << "," << (chi_ok ? "pass" : "FAIL") << ","
                << (d.value("undecided", false) ? "yes" : "no") << ","
                << (d.value("violation", false) ? "yes" : "no") << "," << faltings << ","
                << d.value("seconds", 0.0) << "\n";
        }
    }
    if (format == "svg" || format == "all") {
        std::vector<std::pair<double, double>> s_y1y2, s_z12, s_trY, s_chi;
        for (auto& d : res.dossiers) {
            if (!d.contains("types")) continue;
            double disc = std::stod(d.value("disc_K", "1"));
            for (auto& t : d["types"]) {
                if (!t.contains("points")) continue;
                for (auto& p : t["points"]) {
                    if (p.contains("ineq")) {
                        s_y1y2.push_back({disc, p["ineq"]["slack_y1y2"].value("mid_d", 0.0)});
                        s_z12.push_back({disc, p["ineq"]["slack_z12"].value("mid_d", 0.0)});
                        s_trY.push_back({disc, p["ineq"]["slack_trY"].value("mid_d", 0.0)});
                    }
                    if (p.contains("chi10_abs") && p.contains("chi10_bound_rhs")) {
                        double lhs = p["chi10_abs"].value("mid_d", 0.0);
                        double rhs = p["chi10_bound_rhs"].value("mid_d", 0.0);
                        if (lhs > 0 && rhs > 0)
                            s_chi.push_back({disc, std::log(lhs) - std::log(rhs)});
                    }
                }
            }
        }
        write_svg_scatter(out_dir + "/slack_y1y2.svg", "slack of y1 y2 &#8804; 4/3 det Y",
                          s_y1y2);
        write_svg_scatter(out_dir + "/slack_z12.svg",
                          "slack of |z12| &#8805; (2/3) disc^{-1/2}", s_z12);
        write_svg_scatter(out_dir + "/slack_trY.svg", "slack of the trace bound", s_trY);
        write_svg_scatter(out_dir + "/slack_chi10.svg", "log slack of the chi10 lower bound",
                          s_chi);
    }
}

} // namespace g2cm
