// Automorphism constructors: Ad of the named orthogonal matrix families,
// the basis-table operators H1/H2 and the torus operators t_{x,y,z,u} over a
// calibrated root basis, and the exact automorphism test.
#pragma once

#include <string>
#include <vector>

#include "gradlab/liealg.hpp"

namespace gradlab {

// ---------------------------------------------------------------------------
// Orthogonal 8x8 matrices.

inline bool is_orthogonal(const Matrix& p) {
    if (p.rows != 8 || p.cols != 8) return false;
    return mat_mul(p, transpose(p)) == Matrix::identity(8);
}

namespace detail {
// Identity except a rotation block in each listed plane (i,j):
//   [[c, d], [-d, c]]  with c = (a + 1/a)/2, d = i(a - 1/a)/2.
inline Matrix plane_rotation(const std::vector<std::pair<int, int>>& planes, const FE& a) {
    if (a.is_zero()) throw std::invalid_argument("plane_rotation: zero parameter");
    Matrix m = Matrix::identity(8);
    FE inv_a = fe_inv(a);
    FE half = fe_from_rational(Rat(1, 2));
    FE c = (a + inv_a) * half;
    FE d = fe_i() * (a - inv_a) * half;
    for (const auto& [i, j] : planes) {
        std::size_t r = static_cast<std::size_t>(i - 1), s = static_cast<std::size_t>(j - 1);
        m.at(r, r) = c;
        m.at(s, s) = c;
        m.at(r, s) = d;
        m.at(s, r) = -d;
    }
    return m;
}
}  // namespace detail

// Parametric families. The paper prints the off-diagonal d-entries of the
// rotation blocks symmetrically, which violates P P^t = id; each family is
// realized as a genuine rotation, with the sign resolution fixed by the
// component tables: p,q,r,s rotate by a; f,g,h rotate by 1/a.
inline Matrix build_family(char family, const FE& a) {
    using P = std::vector<std::pair<int, int>>;
    switch (family) {
        case 'p': return detail::plane_rotation(P{{7, 8}}, a);
        case 'q': return detail::plane_rotation(P{{5, 6}}, a);
        case 'r': return detail::plane_rotation(P{{3, 4}}, a);
        case 's': return detail::plane_rotation(P{{1, 2}}, a);
        case 'g': return detail::plane_rotation(P{{5, 7}, {6, 8}}, fe_inv(a));
        case 'f': return detail::plane_rotation(P{{1, 3}, {2, 4}}, fe_inv(a));
        case 'h': return detail::plane_rotation(P{{1, 5}, {2, 6}, {3, 7}, {4, 8}}, fe_inv(a));
        default: throw std::invalid_argument(std::string("build_family: unknown family ") + family);
    }
}

inline Matrix build_family(char family, const Rat& a) {
    return build_family(family, fe_from_rational(a));
}

// f_i = diag{1,...,1,-1,1,...,1} with the -1 in position 9-i.
inline Matrix build_f(int i) {
    if (i < 1 || i > 8) throw std::out_of_range("build_f: index in 1..8");
    Matrix m = Matrix::identity(8);
    m.at(static_cast<std::size_t>(8 - i), static_cast<std::size_t>(8 - i)) = -fe_one();
    return m;
}

inline Matrix build_g(int i) {
    auto from_entries = [](std::initializer_list<std::tuple<int, int, int>> es) {
        Matrix m(8, 8);
        for (const auto& [r, c, v] : es)
            m.at(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(c - 1)) =
                fe_from_long(v);
        return m;
    };
    switch (i) {
        case 1: return mat_mul(build_f(8), build_f(7));
        case 2: return mat_mul(build_f(6), build_f(5));
        case 4: return mat_mul(mat_mul(build_f(7), build_f(5)), mat_mul(build_f(4), build_f(2)));
        case 5: return mat_mul(mat_mul(build_f(8), build_f(6)), mat_mul(build_f(4), build_f(2)));
        case 6: return mat_mul(build_f(2), build_f(1));
        case 7: return mat_mul(mat_mul(build_f(7), build_f(5)), mat_mul(build_f(3), build_f(1)));
        case 9: return mat_mul(mat_mul(build_f(8), build_f(7)), mat_mul(build_f(4), build_f(3)));
        case 10: return mat_mul(mat_mul(build_f(6), build_f(5)), mat_mul(build_f(2), build_f(1)));
        case 13: return mat_mul(mat_mul(build_f(4), build_f(3)), mat_mul(build_f(2), build_f(1)));
        case 3:
            return from_entries({{1, 2, 1}, {2, 1, 1}, {3, 4, 1}, {4, 3, 1},
                                 {5, 6, 1}, {6, 5, 1}, {7, 8, 1}, {8, 7, 1}});
        case 8:
            return from_entries({{1, 3, 1}, {3, 1, 1}, {2, 4, 1}, {4, 2, 1},
                                 {5, 7, 1}, {7, 5, 1}, {6, 8, 1}, {8, 6, 1}});
        case 11:
            return from_entries({{1, 2, 1}, {2, 1, 1}, {3, 4, 1}, {4, 3, 1},
                                 {5, 5, -1}, {6, 6, 1}, {7, 7, -1}, {8, 8, 1}});
        case 12:
            return from_entries({{1, 1, 1}, {2, 2, -1}, {3, 3, 1}, {4, 4, -1},
                                 {5, 6, -1}, {6, 5, 1}, {7, 8, -1}, {8, 7, 1}});
        case 14:
            return from_entries({{1, 5, 1}, {2, 6, 1}, {3, 7, 1}, {4, 8, 1},
                                 {5, 1, 1}, {6, 2, 1}, {7, 3, 1}, {8, 4, 1}});
        default: throw std::out_of_range("build_g: index in 1..14");
    }
}

// ---------------------------------------------------------------------------
// Operators on the 28-dimensional coordinate space.

// The 28x28 matrix of Ad P: x -> P^t x P (P orthogonal, so P^t = P^{-1}).
inline Matrix ad_operator(const Matrix& p) {
    if (!is_orthogonal(p)) throw std::invalid_argument("ad_operator: input not orthogonal");
    Matrix pt = transpose(p);
    Matrix op(kLieDim, kLieDim);
    std::size_t c = 0;
    for (const auto& [i, j] : lie_pairs()) {
        Vec img = lie_to_coords(mat_mul(pt, mat_mul(basis_b_matrix(i, j), p)));
        for (std::size_t r = 0; r < kLieDim; ++r) op.at(r, c) = img[r];
        ++c;
    }
    return op;
}

// True iff A is invertible and A[b_p, b_q] = [A b_p, A b_q] for all 378
// unordered basis pairs, exactly.
struct AutomorphismCheck {
    bool ok = true;
    std::string detail;  // first violated bracket equation, if any
};

inline AutomorphismCheck check_automorphism(const Matrix& a) {
    AutomorphismCheck out;
    if (a.rows != kLieDim || a.cols != kLieDim || rank(a) != kLieDim) {
        out.ok = false;
        out.detail = "operator is not invertible";
        return out;
    }
    std::vector<Vec> cols(kLieDim, Vec(kLieDim));
    for (std::size_t c = 0; c < kLieDim; ++c)
        for (std::size_t r = 0; r < kLieDim; ++r) cols[c][r] = a.at(r, c);
    const StructureConstants& sc = structure_constants();
    for (std::size_t p = 0; p < kLieDim; ++p)
        for (std::size_t q = p + 1; q < kLieDim; ++q) {
            Vec lhs = mat_apply(a, sc.at(p, q));
            Vec rhs = bracket(cols[p], cols[q]);
            if (lhs != rhs) {
                const auto& [i1, j1] = lie_pairs()[p];
                const auto& [i2, j2] = lie_pairs()[q];
                out.ok = false;
                out.detail = "A[b" + std::to_string(i1) + std::to_string(j1) + ",b" +
                             std::to_string(i2) + std::to_string(j2) +
                             "] != [Ab.,Ab.]";
                return out;
            }
        }
    return out;
}

inline bool is_automorphism(const Matrix& a) { return check_automorphism(a).ok; }

// ---------------------------------------------------------------------------
// Basis-table operators over the calibrated root basis B.

// A table entry (i, j, c) reads "phi maps b_i to c * b_j" over the abstract
// 28-element basis (the transpose of the delta reading, fixed by the
// calibration certificates).
struct TableEntry {
    int i, j;
    long c;
};

using BasisOperatorTable = std::vector<TableEntry>;

inline const BasisOperatorTable& h1_table() {
    static const BasisOperatorTable t = [] {
        BasisOperatorTable out;
        const int plus[][2] = {{2, 4},   {3, 1},   {3, 2},   {5, 27},  {6, 8},
                               {7, 9},   {8, 25},  {11, 12}, {12, 26}, {13, 18},
                               {14, 23}, {17, 15}, {18, 20}, {19, 21}, {20, 13},
                               {23, 24}, {24, 14}, {25, 6},  {26, 11}};
        const int minus[][2] = {{1, 1},   {1, 2},   {1, 3},  {1, 4},   {4, 2},
                                {4, 4},   {9, 22},  {10, 19}, {15, 28}, {16, 5},
                                {21, 10}, {22, 7},  {27, 16}, {28, 17}};
        for (const auto& e : plus) out.push_back({e[0], e[1], 1});
        for (const auto& e : minus) out.push_back({e[0], e[1], -1});
        return out;
    }();
    return t;
}

inline const BasisOperatorTable& h2_table() {
    static const BasisOperatorTable t = [] {
        BasisOperatorTable out;
        const int plus[][2] = {{2, 2},   {2, 3},   {2, 4},   {4, 1},   {5, 26},
                               {6, 16},  {7, 19},  {8, 5},   {10, 22}, {11, 13},
                               {12, 18}, {14, 8},  {15, 23}, {16, 12}, {17, 14},
                               {18, 28}, {19, 7},  {20, 17}, {22, 10}, {23, 25},
                               {24, 6},  {26, 20}, {27, 11}, {28, 24}};
        const int minus[][2] = {{1, 1},  {1, 3},   {1, 4},   {3, 3},
                                {9, 21}, {13, 15}, {21, 9},  {25, 27}};
        for (const auto& e : plus) out.push_back({e[0], e[1], 1});
        for (const auto& e : minus) out.push_back({e[0], e[1], -1});
        out.push_back({1, 2, -2});
        return out;
    }();
    return t;
}

// Abstract 28x28 matrix of a table over the B-coordinates (column convention:
// entry (i,j,c) contributes A[j-1][i-1] = c).
inline Matrix table_matrix_abstract(const BasisOperatorTable& t) {
    Matrix m(kLieDim, kLieDim);
    for (const TableEntry& e : t)
        m.at(static_cast<std::size_t>(e.j - 1), static_cast<std::size_t>(e.i - 1)) +=
            fe_from_long(e.c);
    return m;
}

// The 12 torus monomials for B-positions 5..16 as (x,y,z,u) exponent vectors;
// positions 17..28 carry the negatives, positions 1..4 (Cartan) are fixed.
inline const std::array<std::array<int, 4>, 24>& torus_monomials() {
    static const std::array<std::array<int, 4>, 24> mons = [] {
        std::array<std::array<int, 4>, 24> out{};
        const int base[12][4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1},
                                 {1, 1, 0, 0}, {1, 1, 1, 0}, {0, 1, 1, 0}, {1, 1, 0, 1},
                                 {0, 1, 0, 1}, {1, 2, 1, 1}, {1, 1, 1, 1}, {0, 1, 1, 1}};
        for (int k = 0; k < 12; ++k)
            for (int t = 0; t < 4; ++t) {
                out[static_cast<std::size_t>(k)][static_cast<std::size_t>(t)] = base[k][t];
                out[static_cast<std::size_t>(k + 12)][static_cast<std::size_t>(t)] =
                    -base[k][t];
            }
        return out;
    }();
    return mons;
}

// The calibrated root basis B (module calibrate constructs it): positions 1-4
// span the Cartan subalgebra, positions 5-28 are root vectors ordered by their
// t-monomials. Cached with its change-of-basis matrices.
struct CalibratedBasis {
    std::vector<Vec> vectors;                      // 28 ambient coordinate vectors
    std::array<std::array<int, 4>, 24> root_exponents{};  // positions 5..28
    std::array<std::array<Rat, 4>, 4> lattice_map{};      // provenance
    std::vector<FE> scalings;                      // provenance: 24 root scalings
    Matrix phi;      // columns = vectors (B -> ambient)
    Matrix phi_inv;  // ambient -> B

    void finalize() {
        if (vectors.size() != kLieDim)
            throw std::invalid_argument("CalibratedBasis: need 28 vectors");
        phi = Matrix(kLieDim, kLieDim);
        for (std::size_t c = 0; c < kLieDim; ++c)
            for (std::size_t r = 0; r < kLieDim; ++r) phi.at(r, c) = vectors[c][r];
        auto inv = mat_inverse(phi);
        if (!inv) throw std::invalid_argument("CalibratedBasis: vectors not independent");
        phi_inv = *inv;
    }
};

// Table operator expressed in standard b_ij coordinates: Phi * T * Phi^{-1}.
inline Matrix operator_from_table(const BasisOperatorTable& t, const CalibratedBasis& b) {
    if (b.phi.rows != kLieDim) throw std::invalid_argument("operator_from_table: missing calibration");
    return mat_mul(b.phi, mat_mul(table_matrix_abstract(t), b.phi_inv));
}

// t_{x,y,z,u}: diagonal in basis B, fixing positions 1-4 and scaling position
// 4+k by the k-th monomial; expressed in ambient coordinates.
inline Matrix torus_operator(const FE& x, const FE& y, const FE& z, const FE& u,
                             const CalibratedBasis& b) {
    const FE params[4] = {x, y, z, u};
    for (const FE& p : params)
        if (p.is_zero()) throw std::invalid_argument("torus_operator: zero parameter");
    Matrix d(kLieDim, kLieDim);
    for (std::size_t k = 0; k < 4; ++k) d.at(k, k) = fe_one();
    for (std::size_t pos = 4; pos < kLieDim; ++pos) {
        FE val = fe_one();
        const auto& e = torus_monomials()[pos - 4];
        for (int t = 0; t < 4; ++t) {
            long ex = e[static_cast<std::size_t>(t)];
            if (ex != 0) val *= fe_pow(params[t], ex);
        }
        d.at(pos, pos) = val;
    }
    if (b.phi.rows != kLieDim) throw std::invalid_argument("torus_operator: missing calibration");
    return mat_mul(b.phi, mat_mul(d, b.phi_inv));
}

// ---------------------------------------------------------------------------
// Candidate eigenvalue sets for the splitting engine.

// For a torus generator with rational base p: {p^k : -2 <= k <= 2}.
inline std::vector<FE> candidates_free(const Rat& base) {
    std::vector<FE> out;
    for (long k = -2; k <= 2; ++k) {
        Rat v(1);
        for (long t = 0; t < (k < 0 ? -k : k); ++t) v *= base;
        if (k < 0) v = Rat(1) / v;
        out.push_back(fe_from_rational(v));
    }
    return out;
}

// For finite-order generators: all twelve 12th roots of unity (completeness is
// certified downstream by the dimension-sum check).
inline std::vector<FE> candidates_roots_of_unity() {
    return std::vector<FE>(zeta_powers().begin(), zeta_powers().end());
}

}  // namespace gradlab
