// The Lie algebra L = o(8,C): the b_ij basis (b_ij = e_ji - e_ij), coordinates,
// the bracket (matrix commutator), and precomputed structure constants.
#pragma once

#include <array>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gradlab/linalg.hpp"

namespace gradlab {

inline constexpr std::size_t kLieDim = 28;

// The 28 index pairs (i,j), 1-based, i < j, lexicographic.
inline const std::array<std::pair<int, int>, kLieDim>& lie_pairs() {
    static const std::array<std::pair<int, int>, kLieDim> pairs = [] {
        std::array<std::pair<int, int>, kLieDim> out{};
        std::size_t k = 0;
        for (int i = 1; i <= 8; ++i)
            for (int j = i + 1; j <= 8; ++j) out[k++] = {i, j};
        return out;
    }();
    return pairs;
}

inline std::size_t pair_index(int i, int j) {
    if (i < 1 || j > 8 || i >= j)
        throw std::out_of_range("pair_index: need 1 <= i < j <= 8");
    // Offset of row i plus position of j within it.
    std::size_t idx = 0;
    for (int r = 1; r < i; ++r) idx += static_cast<std::size_t>(8 - r);
    return idx + static_cast<std::size_t>(j - i - 1);
}

// b_ij as an 8x8 matrix: entry (j,i) = 1, entry (i,j) = -1.
inline Matrix basis_b_matrix(int i, int j) {
    if (i < 1 || j > 8 || i >= j)
        throw std::out_of_range("basis_b_matrix: need 1 <= i < j <= 8");
    Matrix m(8, 8);
    m.at(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(i - 1)) = fe_one();
    m.at(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) = -fe_one();
    return m;
}

// Coordinate unit vector of b_ij in the 28-dimensional basis.
inline Vec basis_b(int i, int j) {
    Vec v(kLieDim, fe_zero());
    v[pair_index(i, j)] = fe_one();
    return v;
}

// Coordinates of a skew-symmetric 8x8 matrix: coefficient of b_ij is M[j-1][i-1].
inline Vec lie_to_coords(const Matrix& m) {
    Vec v(kLieDim);
    std::size_t k = 0;
    for (const auto& [i, j] : lie_pairs())
        v[k++] = m.at(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(i - 1));
    return v;
}

inline Matrix lie_from_coords(const Vec& v) {
    if (v.size() != kLieDim) throw std::invalid_argument("lie_from_coords: need 28 coords");
    Matrix m(8, 8);
    std::size_t k = 0;
    for (const auto& [i, j] : lie_pairs()) {
        m.at(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(i - 1)) += v[k];
        m.at(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) -= v[k];
        ++k;
    }
    return m;
}

inline bool is_skew(const Matrix& m) {
    if (m.rows != 8 || m.cols != 8) return false;
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            if (!(m.at(i, j) + m.at(j, i)).is_zero()) return false;
    return true;
}

// Bracket of coordinate vectors via the 8x8 commutator xy - yx.
inline Vec bracket(const Vec& x, const Vec& y) {
    Matrix mx = lie_from_coords(x), my = lie_from_coords(y);
    return lie_to_coords(mat_sub(mat_mul(mx, my), mat_mul(my, mx)));
}

inline bool vec_is_zero(const Vec& v) {
    for (const FE& x : v)
        if (!x.is_zero()) return false;
    return true;
}

// Structure constants: coordinates of [b_p, b_q] for all 28x28 basis pairs.
struct StructureConstants {
    std::vector<Vec> table;  // index p*28+q

    const Vec& at(std::size_t p, std::size_t q) const { return table[p * kLieDim + q]; }
};

inline const StructureConstants& structure_constants() {
    static const StructureConstants sc = [] {
        StructureConstants out;
        out.table.resize(kLieDim * kLieDim);
        std::vector<Vec> unit(kLieDim);
        for (std::size_t p = 0; p < kLieDim; ++p) {
            const auto& [i, j] = lie_pairs()[p];
            unit[p] = basis_b(i, j);
        }
        for (std::size_t p = 0; p < kLieDim; ++p)
            for (std::size_t q = 0; q < kLieDim; ++q)
                out.table[p * kLieDim + q] = bracket(unit[p], unit[q]);
        return out;
    }();
    return sc;
}

}  // namespace gradlab
