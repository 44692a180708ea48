// Simultaneous eigenspace decomposition of L under a finite commuting family
// of semisimple operators, with candidate-enumeration eigenvalues certified by
// an exact dimension-sum (exhaustion) check.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gradlab/autos.hpp"

namespace gradlab {

struct DiagError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One generator of a grading: its 28x28 operator, a finite superset of its
// spectrum, and whether its eigenvalue labels live in a free (rational-power)
// or finite (root-of-unity) coordinate.
struct GenOp {
    Matrix op;
    std::vector<FE> candidates;
    bool is_free = false;
    Rat free_base;  // > 1, meaningful when is_free
    std::string name;
};

struct Part {
    std::vector<FE> label;  // eigenvalue tuple in generator order
    Subspace space;
};

struct LabeledDecomposition {
    std::vector<Part> parts;
};

// Refine each part V into {ker(A - lambda)|_V : lambda in candidates}; the
// sub-dimensions must sum to dim V for every part (semisimplicity-and-
// completeness certificate), else DiagError.
inline std::vector<Part> split_by_operator(const std::vector<Part>& parts, const Matrix& a,
                                           const std::vector<FE>& candidates) {
    std::vector<Part> out;
    for (const Part& part : parts) {
        std::size_t k = part.space.dim();
        // Images of the part's basis vectors.
        std::vector<Vec> img(k);
        for (std::size_t j = 0; j < k; ++j) img[j] = mat_apply(a, part.space.basis.row(j));
        std::size_t total = 0;
        for (const FE& lam : candidates) {
            // Solve sum_j c_j (A v_j - lam v_j) = 0: 28 x k system in the c_j.
            Matrix sys(kLieDim, k);
            for (std::size_t r = 0; r < kLieDim; ++r)
                for (std::size_t j = 0; j < k; ++j)
                    sys.at(r, j) = img[j][r] - lam * part.space.basis.at(j, r);
            Subspace ker = kernel_basis(sys);
            if (ker.dim() == 0) continue;
            std::vector<Vec> vecs;
            for (std::size_t t = 0; t < ker.dim(); ++t) {
                Vec v(kLieDim, fe_zero());
                for (std::size_t j = 0; j < k; ++j) {
                    const FE& co = ker.basis.at(t, j);
                    if (co.is_zero()) continue;
                    for (std::size_t r = 0; r < kLieDim; ++r)
                        v[r] += co * part.space.basis.at(j, r);
                }
                vecs.push_back(std::move(v));
            }
            Part np;
            np.label = part.label;
            np.label.push_back(lam);
            np.space = subspace_from_vectors(kLieDim, vecs);
            total += np.space.dim();
            out.push_back(std::move(np));
        }
        if (total != k) {
            std::string lbl = "(";
            for (std::size_t t = 0; t < part.label.size(); ++t)
                lbl += (t ? "," : "") + fe_display(part.label[t]);
            lbl += ")";
            throw DiagError(
                "split_by_operator: eigenspace dimensions sum to " + std::to_string(total) +
                " but the part labeled " + lbl + " has dimension " + std::to_string(k) +
                " - the operator is not semisimple on it or the candidate set missed an "
                "eigenvalue");
        }
    }
    return out;
}

inline LabeledDecomposition simultaneous_diagonalize(const std::vector<GenOp>& gens) {
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (!(mat_mul(gens[i].op, gens[j].op) == mat_mul(gens[j].op, gens[i].op)))
                throw DiagError("simultaneous_diagonalize: generators " + std::to_string(i + 1) +
                                " and " + std::to_string(j + 1) + " do not commute");
    std::vector<Part> parts(1);
    parts[0].space.ambient_dim = kLieDim;
    parts[0].space.basis = Matrix::identity(kLieDim);
    for (const GenOp& g : gens) parts = split_by_operator(parts, g.op, g.candidates);
    std::size_t total = 0;
    for (const Part& p : parts) total += p.space.dim();
    if (total != kLieDim)
        throw DiagError("simultaneous_diagonalize: dimensions sum to " + std::to_string(total));
    return {parts};
}

}  // namespace gradlab
