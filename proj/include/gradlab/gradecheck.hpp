// Grading certification: closure under the bracket, grading type, grading
// group in canonical invariant-factor form, and refinement comparison.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "gradlab/diag.hpp"

namespace gradlab {

struct LabelLess {
    bool operator()(const std::vector<FE>& a, const std::vector<FE>& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t k = 0; k < a.size(); ++k) {
            int c = fe_cmp(a[k], b[k]);
            if (c) return c < 0;
        }
        return false;
    }
};

struct ClosureReport {
    bool pass = true;
    std::string witness;  // first violation: labels g, h and the offending bracket
};

// Definition 2.1: for parts g, h with some nonzero bracket, the componentwise
// label product g*h must be in the support and contain every bracket; zero
// brackets are unconstrained.
inline ClosureReport verify_closure(const LabeledDecomposition& d) {
    ClosureReport rep;
    std::map<std::vector<FE>, const Subspace*, LabelLess> by_label;
    for (const Part& p : d.parts) by_label[p.label] = &p.space;
    auto label_str = [](const std::vector<FE>& l) {
        std::string s = "(";
        for (std::size_t k = 0; k < l.size(); ++k) s += (k ? "," : "") + fe_display(l[k]);
        return s + ")";
    };
    for (const Part& pg : d.parts)
        for (const Part& ph : d.parts) {
            std::vector<FE> prod(pg.label.size());
            for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = pg.label[k] * ph.label[k];
            auto it = by_label.find(prod);
            const Subspace* target = (it == by_label.end()) ? nullptr : it->second;
            for (std::size_t i = 0; i < pg.space.dim(); ++i)
                for (std::size_t j = 0; j < ph.space.dim(); ++j) {
                    Vec w = bracket(pg.space.basis.row(i), ph.space.basis.row(j));
                    if (vec_is_zero(w)) continue;
                    if (target == nullptr || !subspace_contains(*target, w)) {
                        rep.pass = false;
                        rep.witness = "[L_" + label_str(pg.label) + ", L_" +
                                      label_str(ph.label) + "] escapes L_" +
                                      label_str(prod);
                        return rep;
                    }
                }
        }
    return rep;
}

// h_i = number of parts of dimension i, up to the largest occurring dimension.
inline std::vector<long> grading_type(const LabeledDecomposition& d) {
    std::size_t mx = 0;
    for (const Part& p : d.parts) mx = std::max(mx, p.space.dim());
    std::vector<long> t(mx, 0);
    for (const Part& p : d.parts) ++t[p.space.dim() - 1];
    return t;
}

// Support label encoded as an integer exponent vector: per free generator the
// fe_log_base exponent, per finite generator the zeta-exponent (relation 12).
inline std::vector<long> encode_label(const std::vector<FE>& label,
                                      const std::vector<GenOp>& gens) {
    if (label.size() != gens.size())
        throw std::invalid_argument("encode_label: arity mismatch");
    std::vector<long> row(label.size());
    for (std::size_t k = 0; k < label.size(); ++k) {
        if (gens[k].is_free) {
            auto e = fe_log_base(label[k], gens[k].free_base);
            if (!e)
                throw std::domain_error("encode_label: label coordinate " +
                                        fe_display(label[k]) +
                                        " is not a bounded power of the base");
            row[k] = *e;
        } else {
            auto e = fe_zeta_exponent(label[k]);
            if (!e)
                throw std::domain_error("encode_label: label coordinate " +
                                        fe_display(label[k]) + " is not a root of unity");
            row[k] = *e;
        }
    }
    return row;
}

// The grading group: each free generator contributes Z; each finite generator
// contributes a cyclic factor whose order is the order of its action on the
// support (12 / gcd of the zeta-exponents of its label column with 12). The
// torsion part is canonicalized to invariant factors via Smith normal form of
// the cyclic-order relation lattice.
inline GroupStructure universal_group(const LabeledDecomposition& d,
                                      const std::vector<GenOp>& gens) {
    std::vector<std::vector<long>> enc;
    for (const Part& p : d.parts) enc.push_back(encode_label(p.label, gens));
    long free_rank = 0;
    std::vector<long> orders;
    for (std::size_t k = 0; k < gens.size(); ++k) {
        if (gens[k].is_free) {
            ++free_rank;
            continue;
        }
        long g = 12;
        for (const auto& row : enc) g = std::gcd(g, ((row[k] % 12) + 12) % 12);
        orders.push_back(g == 0 ? 1 : 12 / g);
    }
    GroupStructure out;
    out.free_rank = free_rank;
    if (!orders.empty()) {
        IntMatrix rel(orders.size(), orders.size());
        for (std::size_t i = 0; i < orders.size(); ++i) rel.at(i, i) = orders[i];
        std::vector<Int> fs = smith_normal_form(rel);
        std::vector<long> fl;
        for (const Int& f : fs) fl.push_back(static_cast<long>(f.get_si()));
        out.invariant_factors = canonical_factors(fl);
    }
    return out;
}

// True iff every fine part lies in exactly one coarse part and every coarse
// part is exactly the sum of the fine parts it contains (dimension bookkeeping).
inline bool refines(const LabeledDecomposition& fine, const LabeledDecomposition& coarse) {
    std::vector<std::size_t> contained_dims(coarse.parts.size(), 0);
    for (const Part& fp : fine.parts) {
        std::size_t hits = 0, host = 0;
        for (std::size_t c = 0; c < coarse.parts.size(); ++c) {
            bool inside = true;
            for (std::size_t r = 0; r < fp.space.dim() && inside; ++r)
                inside = subspace_contains(coarse.parts[c].space, fp.space.basis.row(r));
            if (inside) {
                ++hits;
                host = c;
            }
        }
        if (hits != 1) return false;
        contained_dims[host] += fp.space.dim();
    }
    for (std::size_t c = 0; c < coarse.parts.size(); ++c)
        if (contained_dims[c] != coarse.parts[c].space.dim()) return false;
    return true;
}

}  // namespace gradlab
