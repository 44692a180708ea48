// Top-level verification engine: instantiate the generators of a catalogued
// grading, diagonalize, certify closure/type/group, compare against golden
// components, and serialize the result.
#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gradlab/calibrate.hpp"
#include "gradlab/catalog.hpp"
#include "gradlab/gradecheck.hpp"

namespace gradlab {

namespace detail {

// Exact spectrum superset for a torus generator: 1 (the Cartan) together with
// the value of every diagonal monomial at the given parameters.
inline std::vector<FE> torus_candidates(const std::array<FE, 4>& vals) {
    std::set<FE, FELess> seen;
    seen.insert(fe_one());
    for (const auto& e : torus_monomials())
        for (int sg : {1, -1}) {
            FE v = fe_one();
            for (int t = 0; t < 4; ++t) {
                long ex = sg * e[static_cast<std::size_t>(t)];
                if (ex != 0) v *= fe_pow(vals[static_cast<std::size_t>(t)], ex);
            }
            seen.insert(v);
        }
    return {seen.begin(), seen.end()};
}

// A torus generator is free iff some parameter is a rational other than +-1;
// its label coordinate is then a power of that rational (normalized above 1).
inline std::optional<Rat> torus_free_base(const std::array<FE, 4>& vals) {
    for (const FE& v : vals) {
        if (!fe_is_rational(v)) continue;
        Rat r = v.c[0];
        if (r == 1 || r == -1) continue;
        if (r < 0) r = -r;
        if (r < 1) r = Rat(1) / r;
        return r;
    }
    return std::nullopt;
}

}  // namespace detail

// Build the splitting operators for a grading. Table and torus generators need
// the calibrated root basis B; passing nullptr for those throws.
inline std::vector<GenOp> instantiate_generators(const GradingSpec& spec,
                                                 const CalibratedBasis* cal) {
    std::vector<GenOp> out;
    for (const GeneratorDesc& g : spec.generators) {
        GenOp op;
        switch (g.kind) {
            case GeneratorDesc::Kind::AdFamily: {
                op.op = ad_operator(build_family(g.family, g.param));
                op.is_free = true;
                op.free_base = g.param < 0 ? -g.param : g.param;
                if (op.free_base < 1) op.free_base = Rat(1) / op.free_base;
                op.candidates = candidates_free(op.free_base);
                op.name = std::string(1, g.family) + "(" + g.param.get_str() + ")";
                break;
            }
            case GeneratorDesc::Kind::AdConst: {
                if (g.name.size() < 2 || (g.name[0] != 'f' && g.name[0] != 'g'))
                    throw std::invalid_argument("instantiate_generators: bad constant " + g.name);
                int idx = std::stoi(g.name.substr(1));
                op.op = ad_operator(g.name[0] == 'f' ? build_f(idx) : build_g(idx));
                op.candidates = candidates_roots_of_unity();
                op.name = g.name;
                break;
            }
            case GeneratorDesc::Kind::Table: {
                if (cal == nullptr)
                    throw std::invalid_argument("instantiate_generators: " + spec.id +
                                                " requires a calibrated basis");
                const BasisOperatorTable& t = g.name == "H1" ? h1_table() : h2_table();
                Matrix m = operator_from_table(t, *cal);
                op.op = m;
                for (int k = 1; k < g.power; ++k) op.op = mat_mul(m, op.op);
                op.candidates = candidates_roots_of_unity();
                op.name = g.name + (g.power == 1 ? "" : "^" + std::to_string(g.power));
                break;
            }
            case GeneratorDesc::Kind::Torus: {
                if (cal == nullptr)
                    throw std::invalid_argument("instantiate_generators: " + spec.id +
                                                " requires a calibrated basis");
                const auto& v = g.torus_values;
                op.op = torus_operator(v[0], v[1], v[2], v[3], *cal);
                op.candidates = detail::torus_candidates(v);
                auto base = detail::torus_free_base(v);
                if (base) {
                    op.is_free = true;
                    op.free_base = *base;
                }
                std::string disp = "t(";
                for (int k = 0; k < 4; ++k)
                    disp += (k ? "," : "") + fe_display(v[static_cast<std::size_t>(k)]);
                op.name = disp + ")";
                break;
            }
        }
        out.push_back(std::move(op));
    }
    return out;
}

struct GradingReport {
    std::string id;
    bool certified = false;
    bool commute_ok = false;
    bool diag_ok = false;
    bool type_ok = false;
    bool group_ok = false;
    bool closure_ok = false;
    bool golden_ok = false;
    std::vector<long> type;
    GroupStructure group;
    LabeledDecomposition decomposition;
    std::string error;  // first failure diagnostic, empty when certified
};

namespace detail {

inline std::string label_display(const std::vector<FE>& l) {
    std::string s = "(";
    for (std::size_t k = 0; k < l.size(); ++k) s += (k ? "," : "") + fe_display(l[k]);
    return s + ")";
}

// Golden vectors are stored either in ambient b_ij coordinates or over the
// calibrated basis; map the latter through Phi before comparing subspaces.
inline bool golden_matches(const GradingSpec& spec, const CalibratedBasis* cal,
                           const LabeledDecomposition& d, std::string& err) {
    std::map<std::vector<FE>, const Subspace*, LabelLess> by_label;
    for (const Part& p : d.parts) by_label[p.label] = &p.space;
    if (spec.golden_components.size() != d.parts.size()) {
        err = "component count mismatch: computed " + std::to_string(d.parts.size()) +
              ", golden " + std::to_string(spec.golden_components.size());
        return false;
    }
    for (const GoldenComponent& c : spec.golden_components) {
        auto it = by_label.find(c.label);
        if (it == by_label.end()) {
            err = "no computed component with label " + label_display(c.label);
            return false;
        }
        std::vector<Vec> vecs = c.basis;
        if (spec.calibrated_frame) {
            if (cal == nullptr) {
                err = "calibrated golden frame without a calibration";
                return false;
            }
            for (Vec& v : vecs) v = mat_apply(cal->phi, v);
        }
        Subspace golden = subspace_from_vectors(kLieDim, vecs);
        if (!subspace_equal(golden, *it->second)) {
            err = "component " + label_display(c.label) + " differs from the golden span";
            return false;
        }
    }
    return true;
}

}  // namespace detail

// Full certification pipeline for one grading. Never throws for check
// failures; those land in the report. Calibration must be supplied for
// q12-q14 (and is used for golden frames).
inline GradingReport verify_grading(const GradingSpec& spec, const CalibratedBasis* cal) {
    GradingReport r;
    r.id = spec.id;
    try {
        std::vector<GenOp> gens = instantiate_generators(spec, cal);
        r.decomposition = simultaneous_diagonalize(gens);
        r.commute_ok = true;  // simultaneous_diagonalize throws on failure
        r.diag_ok = true;
        r.type = grading_type(r.decomposition);
        r.type_ok = (r.type == spec.expected_type);
        if (!r.type_ok) {
            std::ostringstream os;
            os << "type mismatch: computed (";
            for (std::size_t k = 0; k < r.type.size(); ++k) os << (k ? "," : "") << r.type[k];
            os << ")";
            r.error = os.str();
            return r;
        }
        r.group = universal_group(r.decomposition, gens);
        r.group_ok = (r.group == spec.expected_group);
        if (!r.group_ok) {
            r.error = "grading group mismatch";
            return r;
        }
        ClosureReport cl = verify_closure(r.decomposition);
        r.closure_ok = cl.pass;
        if (!cl.pass) {
            r.error = "closure failure: " + cl.witness;
            return r;
        }
        std::string gerr;
        r.golden_ok = detail::golden_matches(spec, cal, r.decomposition, gerr);
        if (!r.golden_ok) {
            r.error = "golden comparison: " + gerr;
            return r;
        }
        r.certified = true;
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    return r;
}

// ---------------------------------------------------------------------------
// Serialization of a computed decomposition.

namespace detail {

inline nlohmann::json fe_to_json(const FE& x) {
    auto s = fe_to_strings(x);
    return nlohmann::json::array({s[0], s[1], s[2], s[3]});
}

}  // namespace detail

inline nlohmann::json report_to_json(const GradingReport& r) {
    nlohmann::json j;
    j["id"] = r.id;
    j["certified"] = r.certified;
    if (!r.error.empty()) j["error"] = r.error;
    j["type"] = r.type;
    j["group"] = {{"free_rank", r.group.free_rank},
                  {"invariant_factors", r.group.invariant_factors}};
    nlohmann::json comps = nlohmann::json::array();
    for (const Part& p : r.decomposition.parts) {
        nlohmann::json c;
        c["label"] = nlohmann::json::array();
        for (const FE& x : p.label) c["label"].push_back(detail::fe_to_json(x));
        c["basis"] = nlohmann::json::array();
        for (std::size_t i = 0; i < p.space.dim(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (const FE& x : p.space.basis.row(i)) row.push_back(detail::fe_to_json(x));
            c["basis"].push_back(row);
        }
        comps.push_back(c);
    }
    j["components"] = comps;
    return j;
}

// Reads the component list of an exported report back into a decomposition
// (used for round-trip checks and `compare` on exported files).
inline LabeledDecomposition decomposition_from_json(const nlohmann::json& j) {
    LabeledDecomposition d;
    for (const auto& c : j.at("components")) {
        Part p;
        for (const auto& lj : c.at("label")) p.label.push_back(detail::fe_from_json(lj));
        std::vector<Vec> vecs;
        for (const auto& vj : c.at("basis")) {
            Vec v;
            for (const auto& xj : vj) v.push_back(detail::fe_from_json(xj));
            vecs.push_back(std::move(v));
        }
        p.space = subspace_from_vectors(kLieDim, vecs);
        d.parts.push_back(std::move(p));
    }
    return d;
}

inline std::string group_display(const GroupStructure& g) {
    std::string s;
    for (long k = 0; k < g.free_rank; ++k) s += (s.empty() ? "Z" : " x Z");
    for (long f : g.invariant_factors)
        s += (s.empty() ? "" : " x ") + ("Z_" + std::to_string(f));
    return s.empty() ? "trivial" : s;
}

inline std::string report_to_text(const GradingReport& r) {
    std::ostringstream os;
    os << r.id << ": " << (r.certified ? "CERTIFIED" : "FAILED") << "\n";
    if (!r.error.empty()) os << "  error: " << r.error << "\n";
    if (!r.type.empty()) {
        os << "  type: (";
        for (std::size_t k = 0; k < r.type.size(); ++k) os << (k ? "," : "") << r.type[k];
        os << ")\n";
        os << "  group: " << group_display(r.group) << "\n";
        os << "  components: " << r.decomposition.parts.size() << "\n";
        for (const Part& p : r.decomposition.parts)
            os << "    " << detail::label_display(p.label) << "  dim " << p.space.dim() << "\n";
    }
    return os.str();
}

}  // namespace gradlab
