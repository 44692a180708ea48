// Exact dense linear algebra and Smith normal form. Oracle tags as in
// test_field.cpp.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gradlab/linalg.hpp"

using namespace gradlab;

namespace {

Matrix rand_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    std::uniform_int_distribution<long> d(-4, 4);
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m.at(i, j) = FE(Rat(d(rng)), Rat(d(rng)), Rat(0), Rat(0));
    return m;
}

}  // namespace

TEST_CASE("rref examples [TRIVIAL/DERIVED]") {
    CHECK(rref(Matrix::identity(3)).r == Matrix::identity(3));
    // [[1, i],[i, -1]]: row2 = i * row1, so one pivot row survives.
    Matrix m = Matrix::from_rows({{fe_one(), fe_i()}, {fe_i(), fe_from_long(-1)}});
    RrefResult r = rref(m);
    CHECK(r.r == Matrix::from_rows({{fe_one(), fe_i()}}));
    CHECK(r.pivots == std::vector<std::size_t>{0});
    CHECK(rref(Matrix(3, 3)).r.rows == 0);
}

TEST_CASE("rref is idempotent [DERIVED: property suite]") {
    std::mt19937_64 rng(7u);
    for (int t = 0; t < 200; ++t) {
        Matrix m = rand_matrix(rng, 4, 6);
        Matrix r1 = rref(m).r;
        Matrix padded = r1.rows == 0 ? Matrix(1, 6) : r1;
        CHECK(rref(padded).r == r1);
    }
}

TEST_CASE("kernel_basis examples [TRIVIAL/DERIVED]") {
    CHECK(kernel_basis(Matrix(4, 4)).dim() == 4);
    CHECK(kernel_basis(Matrix::identity(4)).dim() == 0);
    // [[1, i]]: kernel is span{(-i, 1)}.
    Subspace k = kernel_basis(Matrix::from_rows({{fe_one(), fe_i()}}));
    REQUIRE(k.dim() == 1);
    CHECK(subspace_contains(k, {-fe_i(), fe_one()}));
}

TEST_CASE("kernel correctness and rank-nullity [DERIVED: property suite]") {
    std::mt19937_64 rng(8u);
    for (int t = 0; t < 200; ++t) {
        Matrix m = rand_matrix(rng, 5, 7);
        Subspace k = kernel_basis(m);
        CHECK(rank(m) + k.dim() == 7);
        for (std::size_t i = 0; i < k.dim(); ++i)
            for (const FE& x : mat_apply(m, k.basis.row(i))) CHECK(x.is_zero());
    }
}

TEST_CASE("subspace_contains examples [TRIVIAL/DERIVED]") {
    Subspace full = subspace_from_vectors(2, {{fe_one(), fe_zero()}, {fe_zero(), fe_one()}});
    CHECK(subspace_contains(full, {fe_i(), fe_from_rational(Rat(5, 4))}));
    Subspace line = subspace_from_vectors(2, {{fe_one(), fe_i()}});
    CHECK_FALSE(subspace_contains(line, {fe_one(), fe_zero()}));
    CHECK(subspace_contains(line, {fe_zero(), fe_zero()}));
}

TEST_CASE("subspace_equal examples [TRIVIAL/DERIVED]") {
    Subspace a = subspace_from_vectors(2, {{fe_one(), fe_one()}, {fe_one(), fe_from_long(-1)}});
    Subspace b = subspace_from_vectors(2, {{fe_one(), fe_zero()}, {fe_zero(), fe_one()}});
    CHECK(subspace_equal(a, b));
    Subspace x = subspace_from_vectors(2, {{fe_one(), fe_zero()}});
    Subspace y = subspace_from_vectors(2, {{fe_zero(), fe_one()}});
    CHECK_FALSE(subspace_equal(x, y));
    CHECK(subspace_equal(x, x));
}

TEST_CASE("subspace_equal is an equivalence relation [DERIVED: property suite]") {
    std::mt19937_64 rng(9u);
    std::vector<Subspace> ss;
    std::uniform_int_distribution<long> d(-3, 3);
    for (int t = 0; t < 20; ++t) {
        std::vector<Vec> vs;
        for (int r = 0; r < 2; ++r) {
            Vec v;
            for (int c = 0; c < 4; ++c) v.push_back(fe_from_long(d(rng)));
            vs.push_back(v);
        }
        ss.push_back(subspace_from_vectors(4, vs));
    }
    for (const Subspace& s : ss) {
        CHECK(subspace_equal(s, s));
        for (std::size_t i = 0; i < s.dim(); ++i) CHECK(subspace_contains(s, s.basis.row(i)));
    }
    for (const Subspace& a : ss)
        for (const Subspace& b : ss) CHECK(subspace_equal(a, b) == subspace_equal(b, a));
}

TEST_CASE("smith_normal_form examples [TRIVIAL/DERIVED]") {
    IntMatrix d22(2, 2);
    d22.at(0, 0) = 2;
    d22.at(1, 1) = 2;
    CHECK(smith_normal_form(d22) == std::vector<Int>{2, 2});

    // No relations on Z^1: free rank 1.
    GroupStructure g = group_from_relations(IntMatrix(0, 1), 1);
    CHECK(g.free_rank == 1);
    CHECK(g.invariant_factors.empty());

    IntMatrix d24(2, 2);
    d24.at(0, 0) = 2;
    d24.at(1, 1) = 4;
    CHECK(smith_normal_form(d24) == std::vector<Int>{2, 4});
}

TEST_CASE("SNF divisibility chain and transform validity [DERIVED: property suite]") {
    std::mt19937_64 rng(10u);
    std::uniform_int_distribution<long> d(-6, 6);
    for (int t = 0; t < 100; ++t) {
        IntMatrix m(4, 5);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 5; ++j) m.at(i, j) = d(rng);
        std::vector<Int> fs = smith_normal_form(m);
        for (std::size_t k = 0; k + 1 < fs.size(); ++k) {
            CHECK(fs[k] > 0);
            CHECK(fs[k + 1] % fs[k] == 0);
        }
    }
}

TEST_CASE("solve_linear and mat_inverse [DERIVED]") {
    Matrix a = Matrix::from_rows({{fe_one(), fe_i()}, {fe_zero(), fe_one()}});
    auto inv = mat_inverse(a);
    REQUIRE(inv.has_value());
    CHECK(mat_mul(a, *inv) == Matrix::identity(2));
    auto x = solve_linear(a, {fe_i(), fe_one()});
    REQUIRE(x.has_value());
    Vec ax = mat_apply(a, *x);
    CHECK(ax[0] == fe_i());
    CHECK(ax[1] == fe_one());
    CHECK_FALSE(mat_inverse(Matrix(2, 2)).has_value());
}
