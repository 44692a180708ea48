// Exact dense linear algebra over FieldElement (RREF, kernels, subspace
// lattice) plus integer Smith normal form for abelian-group structure.
#pragma once

#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gradlab/field.hpp"

namespace gradlab {

using Vec = std::vector<FE>;

struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<FE> a;  // row-major

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    FE& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const FE& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    Vec row(std::size_t r) const {
        return Vec(a.begin() + static_cast<long>(r * cols),
                   a.begin() + static_cast<long>((r + 1) * cols));
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = fe_one();
        return m;
    }

    static Matrix from_rows(const std::vector<Vec>& rows_in) {
        if (rows_in.empty()) return Matrix(0, 0);
        Matrix m(rows_in.size(), rows_in[0].size());
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (rows_in[r].size() != m.cols)
                throw std::invalid_argument("Matrix::from_rows: ragged rows");
            for (std::size_t c = 0; c < m.cols; ++c) m.at(r, c) = rows_in[r][c];
        }
        return m;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

inline Matrix transpose(const Matrix& m) {
    Matrix t(m.cols, m.rows);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c) t.at(c, r) = m.at(r, c);
    return t;
}

inline Matrix mat_mul(const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    Matrix z(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const FE& f = x.at(i, k);
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j < y.cols; ++j) {
                const FE& g = y.at(k, j);
                if (!g.is_zero()) z.at(i, j) += f * g;
            }
        }
    return z;
}

inline Matrix mat_sub(const Matrix& x, const Matrix& y) {
    if (x.rows != y.rows || x.cols != y.cols)
        throw std::invalid_argument("mat_sub: shape mismatch");
    Matrix z(x.rows, x.cols);
    for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = x.a[i] - y.a[i];
    return z;
}

inline Vec mat_apply(const Matrix& m, const Vec& v) {
    if (m.cols != v.size()) throw std::invalid_argument("mat_apply: shape mismatch");
    Vec out(m.rows, fe_zero());
    for (std::size_t c = 0; c < m.cols; ++c) {
        if (v[c].is_zero()) continue;
        for (std::size_t r = 0; r < m.rows; ++r) {
            const FE& f = m.at(r, c);
            if (!f.is_zero()) out[r] += f * v[c];
        }
    }
    return out;
}

// Reduced row echelon form, zero rows dropped; pivot columns recorded.
struct RrefResult {
    Matrix r;
    std::vector<std::size_t> pivots;
};

inline RrefResult rref(const Matrix& m) {
    Matrix w = m;
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < w.cols && r < w.rows; ++c) {
        std::size_t pr = r;
        while (pr < w.rows && w.at(pr, c).is_zero()) ++pr;
        if (pr == w.rows) continue;
        if (pr != r)
            for (std::size_t k = 0; k < w.cols; ++k) std::swap(w.at(r, k), w.at(pr, k));
        FE ip = fe_inv(w.at(r, c));
        for (std::size_t k = c; k < w.cols; ++k) w.at(r, k) = ip * w.at(r, k);
        for (std::size_t i = 0; i < w.rows; ++i) {
            if (i == r || w.at(i, c).is_zero()) continue;
            FE f = w.at(i, c);
            for (std::size_t k = c; k < w.cols; ++k) w.at(i, k) -= f * w.at(r, k);
        }
        piv.push_back(c);
        ++r;
    }
    Matrix out(piv.size(), m.cols);
    for (std::size_t i = 0; i < piv.size(); ++i)
        for (std::size_t k = 0; k < m.cols; ++k) out.at(i, k) = w.at(i, k);
    return {out, piv};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

// A subspace in canonical form: basis rows are the RREF of any spanning set.
struct Subspace {
    std::size_t ambient_dim = 0;
    Matrix basis;  // RREF, no zero rows

    std::size_t dim() const { return basis.rows; }

    friend bool operator==(const Subspace& x, const Subspace& y) {
        return x.ambient_dim == y.ambient_dim && x.basis == y.basis;
    }
};

inline Subspace subspace_from_vectors(std::size_t ambient, const std::vector<Vec>& vs) {
    Subspace s;
    s.ambient_dim = ambient;
    if (vs.empty()) {
        s.basis = Matrix(0, ambient);
        return s;
    }
    s.basis = rref(Matrix::from_rows(vs)).r;
    if (s.basis.cols != ambient)
        throw std::invalid_argument("subspace_from_vectors: ambient mismatch");
    return s;
}

inline bool subspace_contains(const Subspace& s, const Vec& v) {
    if (v.size() != s.ambient_dim)
        throw std::invalid_argument("subspace_contains: dimension mismatch");
    // Reduce v against the RREF basis; membership iff the residue is zero.
    Vec w = v;
    for (std::size_t r = 0; r < s.basis.rows; ++r) {
        std::size_t lead = 0;
        while (lead < s.ambient_dim && s.basis.at(r, lead).is_zero()) ++lead;
        if (lead == s.ambient_dim) continue;
        if (!w[lead].is_zero()) {
            FE f = w[lead];
            for (std::size_t k = lead; k < s.ambient_dim; ++k)
                w[k] -= f * s.basis.at(r, k);
        }
    }
    for (const FE& x : w)
        if (!x.is_zero()) return false;
    return true;
}

inline bool subspace_equal(const Subspace& x, const Subspace& y) {
    if (x.ambient_dim != y.ambient_dim)
        throw std::invalid_argument("subspace_equal: dimension mismatch");
    return x.basis == y.basis;
}

inline Subspace kernel_basis(const Matrix& m) {
    RrefResult rr = rref(m);
    std::vector<bool> is_piv(m.cols, false);
    for (std::size_t c : rr.pivots) is_piv[c] = true;
    std::vector<Vec> out;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_piv[f]) continue;
        Vec v(m.cols, fe_zero());
        v[f] = fe_one();
        for (std::size_t r = 0; r < rr.pivots.size(); ++r)
            v[rr.pivots[r]] = -rr.r.at(r, f);
        out.push_back(std::move(v));
    }
    return subspace_from_vectors(m.cols, out);
}

// Exact solve of A x = b for the unique solution (free variables set to 0),
// verified; nullopt if inconsistent.
inline std::optional<Vec> solve_linear(const Matrix& A, const Vec& b) {
    if (A.rows != b.size()) throw std::invalid_argument("solve_linear: shape mismatch");
    Matrix aug(A.rows, A.cols + 1);
    for (std::size_t r = 0; r < A.rows; ++r) {
        for (std::size_t c = 0; c < A.cols; ++c) aug.at(r, c) = A.at(r, c);
        aug.at(r, A.cols) = b[r];
    }
    RrefResult rr = rref(aug);
    for (std::size_t c : rr.pivots)
        if (c == A.cols) return std::nullopt;  // inconsistent
    Vec x(A.cols, fe_zero());
    for (std::size_t r = 0; r < rr.pivots.size(); ++r)
        x[rr.pivots[r]] = rr.r.at(r, A.cols);
    for (std::size_t r = 0; r < A.rows; ++r) {
        FE s = fe_zero();
        for (std::size_t c = 0; c < A.cols; ++c)
            if (!A.at(r, c).is_zero()) s += A.at(r, c) * x[c];
        if (s != b[r]) return std::nullopt;
    }
    return x;
}

inline std::optional<Matrix> mat_inverse(const Matrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("mat_inverse: not square");
    std::size_t n = m.rows;
    Matrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, n + r) = fe_one();
    }
    RrefResult rr = rref(aug);
    if (rr.pivots.size() != n) return std::nullopt;
    for (std::size_t r = 0; r < n; ++r)
        if (rr.pivots[r] != r) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv.at(r, c) = rr.r.at(r, n + c);
    return inv;
}

// ---------------------------------------------------------------------------
// Integer matrices and Smith normal form.

using Int = mpz_class;

struct IntMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Int> a;

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    Int& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const Int& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

// Diagonalization with unimodular transforms: U * A * V = D, with the first
// `rank` diagonal entries nonzero (no divisibility chain at this stage).
struct SmithTransforms {
    IntMatrix d, u, v;
    std::size_t rank = 0;
};

inline SmithTransforms smith_with_transforms(const IntMatrix& input) {
    std::size_t m = input.rows, n = input.cols;
    IntMatrix A = input;
    IntMatrix U(m, m), V(n, n);
    for (std::size_t i = 0; i < m; ++i) U.at(i, i) = 1;
    for (std::size_t i = 0; i < n; ++i) V.at(i, i) = 1;

    auto row_op = [&](std::size_t i, std::size_t j, const Int& f) {
        for (std::size_t k = 0; k < n; ++k) A.at(i, k) -= f * A.at(j, k);
        for (std::size_t k = 0; k < m; ++k) U.at(i, k) -= f * U.at(j, k);
    };
    auto col_op = [&](std::size_t i, std::size_t j, const Int& f) {
        for (std::size_t k = 0; k < m; ++k) A.at(k, i) -= f * A.at(k, j);
        for (std::size_t k = 0; k < n; ++k) V.at(k, i) -= f * V.at(k, j);
    };
    auto row_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < n; ++k) std::swap(A.at(i, k), A.at(j, k));
        for (std::size_t k = 0; k < m; ++k) std::swap(U.at(i, k), U.at(j, k));
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < m; ++k) std::swap(A.at(k, i), A.at(k, j));
        for (std::size_t k = 0; k < n; ++k) std::swap(V.at(k, i), V.at(k, j));
    };

    std::size_t t = 0;
    while (t < m && t < n) {
        // Pivot on the least nonzero absolute value in A[t:, t:].
        bool found = false;
        std::size_t pi = 0, pj = 0;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                if (sgn(A.at(i, j)) == 0) continue;
                if (!found || cmp(abs(A.at(i, j)), abs(A.at(pi, pj))) < 0) {
                    found = true;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        row_swap(t, pi);
        col_swap(t, pj);
        bool done = false;
        while (!done) {
            done = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (sgn(A.at(i, t)) == 0) continue;
                Int f = A.at(i, t) / A.at(t, t);  // mpz truncating division
                // Floor quotient so the remainder shrinks:
                if (sgn(A.at(i, t) - f * A.at(t, t)) != 0 &&
                    sgn(A.at(i, t)) * sgn(A.at(t, t)) < 0)
                    f -= 1;
                row_op(i, t, f);
                if (sgn(A.at(i, t)) != 0) {
                    row_swap(t, i);
                    done = false;
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (sgn(A.at(t, j)) == 0) continue;
                Int f = A.at(t, j) / A.at(t, t);
                if (sgn(A.at(t, j) - f * A.at(t, t)) != 0 &&
                    sgn(A.at(t, j)) * sgn(A.at(t, t)) < 0)
                    f -= 1;
                col_op(j, t, f);
                if (sgn(A.at(t, j)) != 0) {
                    col_swap(t, j);
                    done = false;
                }
            }
        }
        if (sgn(A.at(t, t)) < 0) {
            for (std::size_t k = 0; k < n; ++k) A.at(t, k) = -A.at(t, k);
            for (std::size_t k = 0; k < m; ++k) U.at(t, k) = -U.at(t, k);
        }
        ++t;
    }
    return {A, U, V, t};
}

// Invariant factors d1 | d2 | ... of the integer matrix (nonzero ones only,
// divisibility chain enforced, factors of 1 retained so callers can count rank).
inline std::vector<Int> smith_normal_form(const IntMatrix& m) {
    SmithTransforms st = smith_with_transforms(m);
    std::vector<Int> d;
    for (std::size_t i = 0; i < st.rank; ++i) d.push_back(abs(st.d.at(i, i)));
    // Enforce the divisibility chain by repeated gcd/lcm exchanges.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < d.size(); ++i)
            for (std::size_t j = i + 1; j < d.size(); ++j) {
                Int g = gcd(d[i], d[j]);
                Int l = d[i] / g * d[j];
                if (g != d[i] || l != d[j]) {
                    d[i] = g;
                    d[j] = l;
                    changed = true;
                }
            }
    }
    std::sort(d.begin(), d.end());
    return d;
}

// Finitely generated abelian group in canonical form.
struct GroupStructure {
    long free_rank = 0;
    std::vector<long> invariant_factors;  // d1 | d2 | ..., no factor 1

    friend bool operator==(const GroupStructure& x, const GroupStructure& y) {
        return x.free_rank == y.free_rank && x.invariant_factors == y.invariant_factors;
    }
};

// Z^n modulo the row lattice of `relations` (relations has n columns).
inline GroupStructure group_from_relations(const IntMatrix& relations, std::size_t n) {
    if (relations.rows > 0 && relations.cols != n)
        throw std::invalid_argument("group_from_relations: column count mismatch");
    GroupStructure g;
    if (relations.rows == 0) {
        g.free_rank = static_cast<long>(n);
        return g;
    }
    std::vector<Int> d = smith_normal_form(relations);
    g.free_rank = static_cast<long>(n) - static_cast<long>(d.size());
    for (const Int& f : d)
        if (f != 1) g.invariant_factors.push_back(static_cast<long>(f.get_si()));
    return g;
}

// Canonicalize arbitrary cyclic factors into an invariant-factor chain.
inline std::vector<long> canonical_factors(std::vector<long> fs) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < fs.size(); ++i)
            for (std::size_t j = i + 1; j < fs.size(); ++j) {
                long g = std::gcd(fs[i], fs[j]);
                long l = fs[i] / g * fs[j];
                if (g != fs[i] || l != fs[j]) {
                    fs[i] = g;
                    fs[j] = l;
                    changed = true;
                }
            }
    }
    std::vector<long> out;
    for (long f : fs)
        if (f != 1) out.push_back(f);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace gradlab
