// The root-basis calibration search and its certificates.
// Oracle tags as in test_field.cpp.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "gradlab/calibrate.hpp"
#include "gradlab/engine.hpp"

using namespace gradlab;

namespace {

const Catalog& catalog() {
    static const Catalog cat = load_catalog(find_catalog_dir());
    return cat;
}

// The search is deterministic; run it once for the whole binary.
const CalibratedBasis& calibration() {
    static const CalibratedBasis b = [] {
        const GradingSpec& q10 = catalog().get_spec("q10");
        verify_q10_components(q10);
        return calibrate_root_basis(q10);
    }();
    return b;
}

bool is_eigenvector(const Matrix& a, const Vec& v, const FE& lambda) {
    Vec img = mat_apply(a, v);
    for (std::size_t k = 0; k < v.size(); ++k)
        if (img[k] != lambda * v[k]) return false;
    return true;
}

}  // namespace

TEST_CASE("calibration search succeeds and certifies H1, H2 [DERIVED]") {
    const CalibratedBasis& b = calibration();
    Matrix h1 = operator_from_table(h1_table(), b);
    Matrix h2 = operator_from_table(h2_table(), b);
    CHECK(is_automorphism(h1));
    CHECK(is_automorphism(h2));
    // Orders: H1 is 3, H2 is 6.
    CHECK(mat_mul(h1, mat_mul(h1, h1)) == Matrix::identity(kLieDim));
    CHECK(h1 != Matrix::identity(kLieDim));
    Matrix h2sq = mat_mul(h2, h2);
    Matrix h2cb = mat_mul(h2, h2sq);
    CHECK(mat_mul(h2cb, h2cb) == Matrix::identity(kLieDim));
    CHECK(h2sq != Matrix::identity(kLieDim));
    CHECK(h2cb != Matrix::identity(kLieDim));
}

TEST_CASE("calibrated basis invariants [DERIVED]") {
    const CalibratedBasis& b = calibration();
    REQUIRE(b.vectors.size() == kLieDim);
    // Positions 1-4 span the Cartan subalgebra <b12, b34, b56, b78>.
    Subspace cartan = subspace_from_vectors(
        kLieDim, {b.vectors[0], b.vectors[1], b.vectors[2], b.vectors[3]});
    CHECK(subspace_equal(cartan, subspace_from_vectors(kLieDim, {basis_b(1, 2), basis_b(3, 4),
                                                                 basis_b(5, 6), basis_b(7, 8)})));
    // Phi is invertible and consistent with its inverse.
    CHECK(mat_mul(b.phi, b.phi_inv) == Matrix::identity(kLieDim));
}

TEST_CASE("torus operators are diagonal on the calibrated basis [TABLE]") {
    const CalibratedBasis& b = calibration();
    CHECK(torus_operator(fe_one(), fe_one(), fe_one(), fe_one(), b) ==
          Matrix::identity(kLieDim));
    // t_{1,-1,1,1} has order 2.
    Matrix t = torus_operator(fe_one(), fe_from_long(-1), fe_one(), fe_one(), b);
    CHECK(mat_mul(t, t) == Matrix::identity(kLieDim));
    CHECK(t != Matrix::identity(kLieDim));
    // Position 19 carries the monomial 1/z: eigenvalue 1/2 under t_{2,1,2,1/2}
    // and 9 under t_{1,3,1/9,1}.
    Matrix t1 = torus_operator(fe_from_long(2), fe_one(), fe_from_long(2),
                               fe_from_rational(Rat(1, 2)), b);
    Matrix t2 = torus_operator(fe_one(), fe_from_long(3), fe_from_rational(Rat(1, 9)),
                               fe_one(), b);
    CHECK(is_eigenvector(t1, b.vectors[18], fe_from_rational(Rat(1, 2))));
    CHECK(is_eigenvector(t2, b.vectors[18], fe_from_long(9)));
    CHECK_THROWS(torus_operator(fe_zero(), fe_one(), fe_one(), fe_one(), b));
}

TEST_CASE("Q13 component L_{1/4,3,1} is the 22nd calibrated vector [TABLE]") {
    const CalibratedBasis& b = calibration();
    std::vector<GenOp> gens = instantiate_generators(catalog().get_spec("q13"), &b);
    LabeledDecomposition d = simultaneous_diagonalize(gens);
    std::vector<FE> label{fe_from_rational(Rat(1, 4)), fe_from_long(3), fe_one()};
    const Part* found = nullptr;
    for (const Part& p : d.parts)
        if (p.label == label) found = &p;
    REQUIRE(found != nullptr);
    CHECK(subspace_equal(found->space, subspace_from_vectors(kLieDim, {b.vectors[21]})));
}

TEST_CASE("calibration cache round trip [DERIVED]") {
    const CalibratedBasis& b = calibration();
    std::filesystem::path tmp =
        std::filesystem::temp_directory_path() / "gradlab_test_calibration.json";
    save_calibration(tmp, b);
    auto loaded = load_calibration(tmp);
    REQUIRE(loaded.has_value());
    CHECK(loaded->phi == b.phi);
    CHECK(loaded->scalings == b.scalings);
    std::remove(tmp.string().c_str());
    CHECK_FALSE(load_calibration(tmp).has_value());
}
