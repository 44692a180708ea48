// The fourteen grading specifications as data: generator recipes with
// instantiated parameters, expected types and groups, MAD annotations, and the
// transcribed component tables for golden comparison. Loaded from one JSON
// document per grading under catalog/.
#pragma once

#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gradlab/gradecheck.hpp"

namespace gradlab {

struct GeneratorDesc {
    enum class Kind { AdFamily, AdConst, Table, Torus };
    Kind kind;
    char family = 0;       // AdFamily: one of g f h p q r s
    Rat param = Rat(0);    // AdFamily parameter
    std::string name;      // AdConst: f1..f8 / g1..g14; Table: H1 / H2
    int power = 1;         // Table: H2^power
    std::array<FE, 4> torus_values{};  // Torus
};

struct GoldenComponent {
    std::vector<FE> label;
    std::vector<Vec> basis;  // coordinate vectors, frame given by the spec
};

struct GradingSpec {
    std::string id;
    std::optional<std::string> mad_label;
    std::vector<GeneratorDesc> generators;
    std::vector<long> expected_type;
    GroupStructure expected_group;
    bool calibrated_frame = false;  // golden vectors expressed over the basis B
    std::vector<GoldenComponent> golden_components;

    bool needs_calibration() const {
        for (const GeneratorDesc& g : generators)
            if (g.kind == GeneratorDesc::Kind::Table || g.kind == GeneratorDesc::Kind::Torus)
                return true;
        return false;
    }
};

namespace detail {

inline FE fe_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 4)
        throw std::invalid_argument("catalog: field element must be 4 rational strings");
    return fe_from_strings({j[0].get<std::string>(), j[1].get<std::string>(),
                            j[2].get<std::string>(), j[3].get<std::string>()});
}

inline GeneratorDesc gen_from_json(const nlohmann::json& j) {
    GeneratorDesc g;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "ad_family") {
        g.kind = GeneratorDesc::Kind::AdFamily;
        std::string fam = j.at("family").get<std::string>();
        if (fam.size() != 1) throw std::invalid_argument("catalog: bad family " + fam);
        g.family = fam[0];
        g.param = rat_from_string(j.at("param").get<std::string>());
    } else if (kind == "ad_const") {
        g.kind = GeneratorDesc::Kind::AdConst;
        g.name = j.at("name").get<std::string>();
    } else if (kind == "table") {
        g.kind = GeneratorDesc::Kind::Table;
        g.name = j.at("name").get<std::string>();
        g.power = j.at("power").get<int>();
    } else if (kind == "torus") {
        g.kind = GeneratorDesc::Kind::Torus;
        const auto& vals = j.at("values");
        if (vals.size() != 4) throw std::invalid_argument("catalog: torus needs 4 values");
        for (std::size_t k = 0; k < 4; ++k) g.torus_values[k] = fe_from_json(vals[k]);
    } else {
        throw std::invalid_argument("catalog: unknown generator kind " + kind);
    }
    return g;
}

}  // namespace detail

inline GradingSpec load_spec_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("catalog: cannot open " + path.string());
    nlohmann::json j;
    in >> j;
    GradingSpec s;
    s.id = j.at("id").get<std::string>();
    if (!j.at("mad_label").is_null()) s.mad_label = j.at("mad_label").get<std::string>();
    for (const auto& gj : j.at("generators")) s.generators.push_back(detail::gen_from_json(gj));
    for (const auto& t : j.at("expected_type")) s.expected_type.push_back(t.get<long>());
    s.expected_group.free_rank = j.at("expected_group").at("free_rank").get<long>();
    for (const auto& f : j.at("expected_group").at("invariant_factors"))
        s.expected_group.invariant_factors.push_back(f.get<long>());
    s.calibrated_frame = j.at("component_frame").get<std::string>() == "calibrated";
    for (const auto& cj : j.at("golden_components")) {
        GoldenComponent c;
        for (const auto& lj : cj.at("label")) c.label.push_back(detail::fe_from_json(lj));
        for (const auto& vj : cj.at("basis")) {
            Vec v;
            for (const auto& xj : vj) v.push_back(detail::fe_from_json(xj));
            if (v.size() != kLieDim)
                throw std::invalid_argument("catalog: golden vector must have 28 coordinates");
            c.basis.push_back(std::move(v));
        }
        if (c.label.size() != s.generators.size())
            throw std::invalid_argument("catalog: label arity mismatch in " + s.id);
        s.golden_components.push_back(std::move(c));
    }
    long sum = 0;
    for (std::size_t i = 0; i < s.expected_type.size(); ++i)
        sum += s.expected_type[i] * static_cast<long>(i + 1);
    if (sum != static_cast<long>(kLieDim))
        throw std::invalid_argument("catalog: expected type of " + s.id + " does not sum to 28");
    return s;
}

inline const std::vector<std::string>& catalog_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (int k = 1; k <= 14; ++k) out.push_back("q" + std::to_string(k));
        return out;
    }();
    return ids;
}

struct Catalog {
    std::map<std::string, GradingSpec> specs;

    const GradingSpec& get_spec(const std::string& id) const {
        auto it = specs.find(id);
        if (it == specs.end()) throw std::out_of_range("catalog: unknown grading id " + id);
        return it->second;
    }
};

inline Catalog load_catalog(const std::filesystem::path& dir) {
    Catalog c;
    for (const std::string& id : catalog_ids())
        c.specs[id] = load_spec_file(dir / (id + ".json"));
    return c;
}

// Locate the catalog directory: explicit override, then GRADLAB_CATALOG, then
// ./catalog and a few ancestors (so the tool runs from a build tree).
inline std::filesystem::path find_catalog_dir(const std::string& override_path = "") {
    namespace fs = std::filesystem;
    std::vector<fs::path> candidates;
    if (!override_path.empty()) candidates.emplace_back(override_path);
    if (const char* env = std::getenv("GRADLAB_CATALOG")) candidates.emplace_back(env);
    fs::path rel = "catalog";
    fs::path cur = fs::current_path();
    for (int up = 0; up < 4; ++up) {
        candidates.push_back(cur / rel);
        cur = cur.parent_path();
    }
#ifdef GRADLAB_SOURCE_DIR
    candidates.emplace_back(fs::path(GRADLAB_SOURCE_DIR) / "catalog");
#endif
    for (const fs::path& p : candidates)
        if (fs::exists(p / "q1.json")) return p;
    throw std::runtime_error("catalog directory not found (set GRADLAB_CATALOG)");
}

}  // namespace gradlab
