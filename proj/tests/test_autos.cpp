// Orthogonal matrix families, Ad operators, and the automorphism test.
// Oracle tags as in test_field.cpp.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "gradlab/autos.hpp"

using namespace gradlab;

namespace {

const std::vector<char> kFamilies = {'g', 'f', 'h', 'p', 'q', 'r', 's'};

Matrix diag_signs(const std::array<int, 8>& s) {
    Matrix m(8, 8);
    for (std::size_t k = 0; k < 8; ++k) m.at(k, k) = fe_from_long(s[k]);
    return m;
}

}  // namespace

TEST_CASE("all constant matrices are orthogonal [DERIVED]") {
    for (int i = 1; i <= 8; ++i) CHECK(is_orthogonal(build_f(i)));
    for (int i = 1; i <= 14; ++i) CHECK(is_orthogonal(build_g(i)));
}

TEST_CASE("parametric families are orthogonal at rational parameters and omega [DERIVED]") {
    for (char fam : kFamilies) {
        for (long a : {2L, 3L, 5L, 7L, -1L}) CHECK(is_orthogonal(build_family(fam, Rat(a))));
        CHECK(is_orthogonal(build_family(fam, fe_omega())));
    }
}

TEST_CASE("family values [TRIVIAL/DERIVED]") {
    CHECK(build_family('g', Rat(1)) == Matrix::identity(8));
    // p(2): rotation block in the (7,8) plane, c = 5/4, d = 3i/4.
    Matrix p2 = build_family('p', Rat(2));
    CHECK(p2.at(6, 6) == fe_from_rational(Rat(5, 4)));
    CHECK(p2.at(7, 7) == fe_from_rational(Rat(5, 4)));
    CHECK(p2.at(6, 7) == Rat(3, 4) * fe_i());
    CHECK(p2.at(7, 6) == -(Rat(3, 4) * fe_i()));
    for (std::size_t k = 0; k < 6; ++k) CHECK(p2.at(k, k) == fe_one());
    CHECK(build_f(1) == diag_signs({1, 1, 1, 1, 1, 1, 1, -1}));
    CHECK_THROWS(build_family('x', Rat(2)));
    CHECK_THROWS(build_family('p', Rat(0)));
}

TEST_CASE("g_i relations as products of the f_i [DERIVED]") {
    CHECK(build_g(1) == diag_signs({-1, -1, 1, 1, 1, 1, 1, 1}));   // f8 f7
    CHECK(build_g(2) == diag_signs({1, 1, -1, -1, 1, 1, 1, 1}));   // f6 f5
    CHECK(build_g(4) == diag_signs({1, -1, 1, -1, -1, 1, -1, 1})); // f7 f5 f4 f2
    CHECK(build_g(5) == diag_signs({-1, 1, -1, 1, -1, 1, -1, 1})); // f8 f6 f4 f2
    CHECK(build_g(6) == diag_signs({1, 1, 1, 1, 1, 1, -1, -1}));   // f2 f1
    CHECK(build_g(7) == diag_signs({1, -1, 1, -1, 1, -1, 1, -1})); // f7 f5 f3 f1
    CHECK(build_g(9) == diag_signs({-1, -1, 1, 1, -1, -1, 1, 1})); // f8 f7 f4 f3
    CHECK(build_g(10) == diag_signs({1, 1, -1, -1, 1, 1, -1, -1})); // f6 f5 f2 f1
    CHECK(build_g(13) == diag_signs({1, 1, 1, 1, -1, -1, -1, -1})); // f4 f3 f2 f1
}

TEST_CASE("ad_operator examples [TRIVIAL/DERIVED]") {
    CHECK(ad_operator(Matrix::identity(8)) == Matrix::identity(kLieDim));
    // Conjugation by a diagonal sign matrix scales b_ij by s_i * s_j.
    Matrix adf1 = ad_operator(build_f(1));
    Vec img18 = mat_apply(adf1, basis_b(1, 8));
    CHECK(img18[pair_index(1, 8)] == fe_from_long(-1));
    CHECK(mat_apply(adf1, basis_b(1, 2)) == basis_b(1, 2));
    // g14 swaps k <-> k+4, so b_12 -> b_56.
    CHECK(mat_apply(ad_operator(build_g(14)), basis_b(1, 2)) == basis_b(5, 6));
    CHECK_THROWS(ad_operator(Matrix(8, 8)));
}

TEST_CASE("Ad is an (order-reversing) homomorphism [DERIVED]") {
    // With Ad P(x) = P^t x P, Ad(P) Ad(Q) = Ad(QP).
    Matrix p = build_family('p', Rat(2));
    Matrix q = build_g(3);
    CHECK(mat_mul(ad_operator(p), ad_operator(q)) == ad_operator(mat_mul(q, p)));
    Matrix r = build_family('h', Rat(5));
    CHECK(mat_mul(ad_operator(q), ad_operator(r)) == ad_operator(mat_mul(r, q)));
}

TEST_CASE("is_automorphism [TRIVIAL/DERIVED]") {
    CHECK(is_automorphism(ad_operator(build_family('f', Rat(2)))));
    CHECK(is_automorphism(ad_operator(build_g(8))));
    Matrix twice = Matrix::identity(kLieDim);
    for (FE& x : twice.a) x = fe_from_long(2) * x;
    AutomorphismCheck c = check_automorphism(twice);
    CHECK_FALSE(c.ok);
    CHECK_FALSE(c.detail.empty());
}

TEST_CASE("candidate eigenvalue sets [TRIVIAL]") {
    std::vector<FE> c2 = candidates_free(Rat(2));
    REQUIRE(c2.size() == 5);
    CHECK(c2[0] == fe_from_rational(Rat(1, 4)));
    CHECK(c2[4] == fe_from_long(4));
    CHECK(candidates_roots_of_unity().size() == 12);
}

TEST_CASE("basis operator tables [DERIVED]") {
    // The abstract H1 and H2 matrices have finite order 3 and 6 even before
    // calibration (they are written over the abstract 28-element basis).
    Matrix h1 = table_matrix_abstract(h1_table());
    Matrix h2 = table_matrix_abstract(h2_table());
    Matrix h1c = mat_mul(h1, mat_mul(h1, h1));
    CHECK(h1c == Matrix::identity(kLieDim));
    Matrix h2sq = mat_mul(h2, h2);
    Matrix h2six = mat_mul(h2sq, mat_mul(h2sq, h2sq));
    CHECK(h2six == Matrix::identity(kLieDim));
    CHECK(h2 != Matrix::identity(kLieDim));
    CHECK(h2sq != Matrix::identity(kLieDim));
    CHECK(mat_mul(h2, h2sq) != Matrix::identity(kLieDim));
}

TEST_CASE("torus monomials are 24 distinct vectors closed under negation [DERIVED]") {
    const auto& ms = torus_monomials();
    REQUIRE(ms.size() == 24);
    std::set<std::array<int, 4>> seen(ms.begin(), ms.end());
    CHECK(seen.size() == 24);
    for (const auto& m : ms) {
        std::array<int, 4> neg{-m[0], -m[1], -m[2], -m[3]};
        CHECK(seen.count(neg) == 1);
    }
}
