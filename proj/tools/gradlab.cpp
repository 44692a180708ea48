// gradlab: reconstruct, verify, and export the fourteen fine gradings of
// o(8,C) with exact arithmetic over Q(zeta12).
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "gradlab/engine.hpp"

namespace fs = std::filesystem;
using namespace gradlab;

namespace {

struct Options {
    std::string format = "text";
    std::string out;
    std::string calibration = "calibration.json";
    std::string catalog_dir;
    int jobs = 1;
};

void write_output(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream f(opt.out);
        if (!f) throw std::runtime_error("cannot open output file " + opt.out);
        f << text;
    }
}

// Load the cached calibration when present and still valid; otherwise run the
// search and cache the result.
const CalibratedBasis* get_calibration(const Options& opt, const Catalog& cat,
                                       std::optional<CalibratedBasis>& store,
                                       std::string& err) {
    if (store) return &*store;
    try {
        fs::path p = opt.calibration;
        if (auto loaded = load_calibration(p)) {
            store = std::move(*loaded);
            return &*store;
        }
        const GradingSpec& q10 = cat.get_spec("q10");
        verify_q10_components(q10);
        store = calibrate_root_basis(q10);
        save_calibration(p, *store);
        return &*store;
    } catch (const std::exception& e) {
        err = e.what();
        return nullptr;
    }
}

GradingReport run_one(const Catalog& cat, const std::string& id, const CalibratedBasis* cal,
                      const std::string& cal_err) {
    const GradingSpec& spec = cat.get_spec(id);
    if (spec.needs_calibration() && cal == nullptr) {
        GradingReport r;
        r.id = id;
        r.error = "calibration unavailable: " + cal_err;
        return r;
    }
    return verify_grading(spec, cal);
}

int emit_reports(const Options& opt, const std::vector<GradingReport>& reports) {
    bool all_ok = true;
    for (const GradingReport& r : reports) all_ok = all_ok && r.certified;
    if (opt.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const GradingReport& r : reports) j.push_back(report_to_json(r));
        write_output(opt, (reports.size() == 1 ? j[0] : j).dump(2) + "\n");
    } else {
        std::string text;
        for (const GradingReport& r : reports) text += report_to_text(r);
        if (reports.size() > 1)
            text += all_ok ? "all gradings certified\n" : "certification FAILED\n";
        write_output(opt, text);
    }
    return all_ok ? 0 : 1;
}

int cmd_list(const Options& opt, const Catalog& cat) {
    if (opt.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const std::string& id : catalog_ids()) {
            const GradingSpec& s = cat.get_spec(id);
            nlohmann::json e;
            e["id"] = s.id;
            e["label"] = s.mad_label ? nlohmann::json(*s.mad_label) : nlohmann::json();
            e["generators"] = s.generators.size();
            e["expected_type"] = s.expected_type;
            e["expected_group"] = {{"free_rank", s.expected_group.free_rank},
                                   {"invariant_factors", s.expected_group.invariant_factors}};
            j.push_back(e);
        }
        write_output(opt, j.dump(2) + "\n");
    } else {
        std::string text;
        for (const std::string& id : catalog_ids()) {
            const GradingSpec& s = cat.get_spec(id);
            text += s.id + ": " + (s.mad_label ? *s.mad_label : "(calibrated)") + ", " +
                    std::to_string(s.generators.size()) + " generators, group " +
                    group_display(s.expected_group) + "\n";
        }
        write_output(opt, text);
    }
    return 0;
}

int cmd_compare(const Options& opt, const Catalog& cat, const std::string& id1,
                const std::string& id2, std::optional<CalibratedBasis>& cal_store) {
    std::string cal_err;
    const GradingSpec& s1 = cat.get_spec(id1);
    const GradingSpec& s2 = cat.get_spec(id2);
    const CalibratedBasis* cal = nullptr;
    if (s1.needs_calibration() || s2.needs_calibration()) {
        cal = get_calibration(opt, cat, cal_store, cal_err);
        if (cal == nullptr) throw std::runtime_error("calibration unavailable: " + cal_err);
    }
    LabeledDecomposition d1 = simultaneous_diagonalize(instantiate_generators(s1, cal));
    LabeledDecomposition d2 = simultaneous_diagonalize(instantiate_generators(s2, cal));
    bool r12 = refines(d1, d2), r21 = refines(d2, d1);
    std::string verdict = r12 && r21 ? "equivalent"
                          : r12      ? id1 + " refines " + id2
                          : r21      ? id2 + " refines " + id1
                                     : "incomparable";
    if (opt.format == "json") {
        nlohmann::json j{{"first", id1},
                         {"second", id2},
                         {"first_refines_second", r12},
                         {"second_refines_first", r21},
                         {"verdict", verdict}};
        write_output(opt, j.dump(2) + "\n");
    } else {
        write_output(opt, id1 + " vs " + id2 + ": " + verdict + "\n");
    }
    return 0;
}

int cmd_selftest(const Options& opt) {
    std::vector<std::pair<std::string, bool>> checks;
    // Field arithmetic: defining relation and a handful of random axioms.
    checks.emplace_back("zeta^4 = zeta^2 - 1",
                        fe_pow(fe_zeta(), 4) == fe_pow(fe_zeta(), 2) - fe_one());
    checks.emplace_back("omega^3 = 1", fe_pow(fe_omega(), 3) == fe_one());
    {
        std::mt19937_64 rng(11u);
        std::uniform_int_distribution<int> d(-6, 6);
        bool ok = true;
        for (int t = 0; t < 200 && ok; ++t) {
            FE a(Rat(d(rng)), Rat(d(rng)), Rat(d(rng)), Rat(d(rng)));
            FE b(Rat(d(rng)), Rat(d(rng)), Rat(d(rng)), Rat(d(rng)));
            FE c(Rat(d(rng)), Rat(d(rng)), Rat(d(rng)), Rat(d(rng)));
            ok = ok && (a * (b + c) == a * b + a * c) && (a * b == b * a);
            if (!a.is_zero()) ok = ok && (a * fe_inv(a) == fe_one());
        }
        checks.emplace_back("random field axioms", ok);
    }
    // Lie algebra sanity.
    checks.emplace_back("[b12,b13] = b23",
                        bracket(basis_b(1, 2), basis_b(1, 3)) == basis_b(2, 3));
    {
        bool jac = true;
        const Vec x = basis_b(1, 2), y = basis_b(3, 4), z = basis_b(1, 3);
        Vec s(kLieDim, fe_zero());
        auto add = [&](const Vec& v) {
            for (std::size_t k = 0; k < kLieDim; ++k) s[k] += v[k];
        };
        add(bracket(x, bracket(y, z)));
        add(bracket(y, bracket(z, x)));
        add(bracket(z, bracket(x, y)));
        jac = vec_is_zero(s);
        checks.emplace_back("Jacobi spot check", jac);
    }
    checks.emplace_back("Ad f(2) is an automorphism",
                        is_automorphism(ad_operator(build_family('f', Rat(2)))));
    bool all = true;
    std::string text;
    for (auto& [name, ok] : checks) {
        text += std::string(ok ? "ok   " : "FAIL ") + name + "\n";
        all = all && ok;
    }
    write_output(opt, text);
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of the fine gradings of o(8,C)"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", opt.out, "write output to this file");
    app.add_option("--calibration", opt.calibration, "calibration cache path");
    app.add_option("--catalog", opt.catalog_dir, "catalog directory override");
    app.add_option("--jobs", opt.jobs, "parallel verification jobs")->check(CLI::Range(1, 64));

    std::string id, id2;
    CLI::App* c_list = app.add_subcommand("list", "list the catalogued gradings");
    CLI::App* c_compute = app.add_subcommand("compute", "compute a grading's decomposition");
    c_compute->add_option("id", id, "grading id (q1..q14)")->required();
    CLI::App* c_verify = app.add_subcommand("verify", "verify one grading");
    c_verify->add_option("id", id, "grading id (q1..q14)")->required();
    CLI::App* c_all = app.add_subcommand("verify-all", "verify all fourteen gradings");
    CLI::App* c_compare = app.add_subcommand("compare", "compare two gradings by refinement");
    c_compare->add_option("first", id, "first grading id")->required();
    c_compare->add_option("second", id2, "second grading id")->required();
    CLI::App* c_cal = app.add_subcommand("calibrate", "compute and cache the root basis");
    CLI::App* c_export = app.add_subcommand("export", "export a computed grading as JSON");
    c_export->add_option("id", id, "grading id (q1..q14)")->required();
    CLI::App* c_self = app.add_subcommand("selftest", "quick internal consistency checks");

    for (CLI::App* s : app.get_subcommands(nullptr)) s->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_self->parsed()) return cmd_selftest(opt);

        Catalog cat = load_catalog(find_catalog_dir(opt.catalog_dir));
        if (c_list->parsed()) return cmd_list(opt, cat);

        std::optional<CalibratedBasis> cal_store;
        std::string cal_err;

        if (c_cal->parsed()) {
            const CalibratedBasis* cal = get_calibration(opt, cat, cal_store, cal_err);
            if (cal == nullptr) {
                std::cerr << "calibration failed: " << cal_err << "\n";
                return 1;
            }
            write_output(opt, "calibration certified and cached at " + opt.calibration + "\n");
            return 0;
        }
        if (c_compare->parsed()) return cmd_compare(opt, cat, id, id2, cal_store);

        std::vector<std::string> ids;
        if (c_all->parsed())
            ids = catalog_ids();
        else
            ids.push_back(id);

        bool need_cal = false;
        for (const std::string& i : ids) need_cal = need_cal || cat.get_spec(i).needs_calibration();
        const CalibratedBasis* cal =
            need_cal ? get_calibration(opt, cat, cal_store, cal_err) : nullptr;

        std::vector<GradingReport> reports(ids.size());
        if (opt.jobs > 1 && ids.size() > 1) {
            std::vector<std::future<GradingReport>> futs;
            for (const std::string& i : ids)
                futs.push_back(std::async(std::launch::async, run_one, std::cref(cat), i, cal,
                                          std::cref(cal_err)));
            for (std::size_t k = 0; k < futs.size(); ++k) reports[k] = futs[k].get();
        } else {
            for (std::size_t k = 0; k < ids.size(); ++k)
                reports[k] = run_one(cat, ids[k], cal, cal_err);
        }

        if (c_export->parsed()) {
            Options eopt = opt;
            eopt.format = "json";
            return emit_reports(eopt, reports);
        }
        if (c_compute->parsed() || c_verify->parsed() || c_all->parsed())
            return emit_reports(opt, reports);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
