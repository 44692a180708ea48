// Acceptance harness: one PASS/FAIL line per top-level criterion. Exits
// nonzero if any criterion fails.
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "gradlab/calibrate.hpp"
#include "gradlab/engine.hpp"

using namespace gradlab;

namespace {

int g_failures = 0;

void report(int n, const std::string& name, bool ok, const std::string& detail = "") {
    std::printf("%s criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", n, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

// 1. Orthogonality of every constant matrix and every parametric family at
//    {2, 3, 5, 7, omega, -1}.
bool criterion_orthogonality() {
    for (int i = 1; i <= 8; ++i)
        if (!is_orthogonal(build_f(i))) return false;
    for (int i = 1; i <= 14; ++i)
        if (!is_orthogonal(build_g(i))) return false;
    for (char fam : {'g', 'f', 'h', 'p', 'q', 'r', 's'}) {
        for (long a : {2L, 3L, 5L, 7L, -1L})
            if (!is_orthogonal(build_family(fam, Rat(a)))) return false;
        if (!is_orthogonal(build_family(fam, fe_omega()))) return false;
    }
    return true;
}

// 2. The g_i that are products of f_i equal those exact matrix products.
bool criterion_g_relations() {
    auto prod = [](std::vector<int> is) {
        Matrix m = Matrix::identity(8);
        for (int i : is) m = mat_mul(m, build_f(i));
        return m;
    };
    return build_g(1) == prod({8, 7}) && build_g(2) == prod({6, 5}) &&
           build_g(4) == prod({7, 5, 4, 2}) && build_g(5) == prod({8, 6, 4, 2}) &&
           build_g(6) == prod({2, 1}) && build_g(7) == prod({7, 5, 3, 1}) &&
           build_g(9) == prod({8, 7, 4, 3}) && build_g(10) == prod({6, 5, 2, 1}) &&
           build_g(13) == prod({4, 3, 2, 1});
}

// 10. Property suites: field axioms, exhaustive Jacobi, rref idempotence,
//     kernel correctness, SNF divisibility chains.
bool criterion_properties(std::string& detail) {
    std::mt19937_64 rng(424242u);
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 5);
    auto rand_rat = [&] {
        Rat r(num(rng), den(rng));
        r.canonicalize();  // mpq_class(n, d) does not reduce the fraction
        return r;
    };
    auto rand_fe = [&] { return FE(rand_rat(), rand_rat(), rand_rat(), rand_rat()); };
    for (int t = 0; t < 10000; ++t) {
        FE a = rand_fe(), b = rand_fe(), c = rand_fe();
        bool ok = (a * b) * c == a * (b * c) && a * b == b * a &&
                  a * (b + c) == a * b + a * c && (a - a).is_zero();
        if (!a.is_zero()) ok = ok && a * fe_inv(a) == fe_one();
        if (!ok) {
            detail = "field axiom failure at trial " + std::to_string(t);
            return false;
        }
    }
    std::vector<Vec> bs;
    for (const auto& [i, j] : lie_pairs()) bs.push_back(basis_b(i, j));
    for (std::size_t p = 0; p < kLieDim; ++p)
        for (std::size_t q = p; q < kLieDim; ++q)
            for (std::size_t r = q; r < kLieDim; ++r) {
                Vec s(kLieDim, fe_zero());
                auto add = [&](const Vec& v) {
                    for (std::size_t k = 0; k < kLieDim; ++k) s[k] += v[k];
                };
                add(bracket(bracket(bs[p], bs[q]), bs[r]));
                add(bracket(bracket(bs[q], bs[r]), bs[p]));
                add(bracket(bracket(bs[r], bs[p]), bs[q]));
                if (!vec_is_zero(s)) {
                    detail = "Jacobi failure";
                    return false;
                }
            }
    std::uniform_int_distribution<long> sm(-4, 4);
    for (int t = 0; t < 100; ++t) {
        Matrix m(5, 7);
        for (FE& x : m.a) x = FE(Rat(sm(rng)), Rat(sm(rng)), Rat(0), Rat(0));
        Matrix r1 = rref(m).r;
        if (r1.rows > 0 && rref(r1).r != r1) {
            detail = "rref not idempotent";
            return false;
        }
        Subspace k = kernel_basis(m);
        if (rank(m) + k.dim() != 7) {
            detail = "rank-nullity failure";
            return false;
        }
        for (std::size_t i = 0; i < k.dim(); ++i)
            for (const FE& x : mat_apply(m, k.basis.row(i)))
                if (!x.is_zero()) {
                    detail = "kernel vector not annihilated";
                    return false;
                }
        IntMatrix im(4, 5);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 5; ++j) im.at(i, j) = sm(rng);
        std::vector<Int> fs = smith_normal_form(im);
        for (std::size_t i = 0; i + 1 < fs.size(); ++i)
            if (fs[i] <= 0 || fs[i + 1] % fs[i] != 0) {
                detail = "SNF divisibility chain broken";
                return false;
            }
    }
    return true;
}

}  // namespace

int main() {
    report(1, "orthogonality of all matrix generators", criterion_orthogonality());
    report(2, "g_i product relations", criterion_g_relations());

    Catalog cat;
    try {
        cat = load_catalog(find_catalog_dir());
    } catch (const std::exception& e) {
        for (int n = 3; n <= 9; ++n) report(n, "catalog-dependent criterion", false, e.what());
        std::string detail;
        report(10, "property suites", criterion_properties(detail), detail);
        return 1;
    }

    // 8. Calibration.
    std::optional<CalibratedBasis> cal;
    std::string cal_err;
    try {
        const GradingSpec& q10 = cat.get_spec("q10");
        verify_q10_components(q10);
        CalibratedBasis b = calibrate_root_basis(q10);
        Matrix h1 = operator_from_table(h1_table(), b);
        Matrix h2 = operator_from_table(h2_table(), b);
        Matrix h2cb = mat_mul(h2, mat_mul(h2, h2));
        bool orders = mat_mul(h1, mat_mul(h1, h1)) == Matrix::identity(kLieDim) &&
                      h1 != Matrix::identity(kLieDim) &&
                      mat_mul(h2cb, h2cb) == Matrix::identity(kLieDim) &&
                      h2cb != Matrix::identity(kLieDim) &&
                      mat_mul(h2, h2) != Matrix::identity(kLieDim);
        if (!orders)
            cal_err = "H1/H2 orders are not 3/6";
        else
            cal = std::move(b);
    } catch (const std::exception& e) {
        cal_err = e.what();
    }

    // 3-7. Full verification of all fourteen gradings.
    std::vector<GradingReport> reports;
    bool commute_all = true, types_all = true, groups_all = true, closure_all = true,
         golden_all = true;
    std::string first_err;
    std::vector<LabeledDecomposition> decs;
    std::vector<std::string> dec_ids;
    for (const std::string& id : catalog_ids()) {
        const GradingSpec& spec = cat.get_spec(id);
        if (spec.needs_calibration() && !cal) {
            commute_all = types_all = groups_all = closure_all = golden_all = false;
            if (first_err.empty()) first_err = id + ": calibration unavailable: " + cal_err;
            continue;
        }
        GradingReport r = verify_grading(spec, cal ? &*cal : nullptr);
        commute_all = commute_all && r.commute_ok && r.diag_ok;
        types_all = types_all && r.type_ok;
        groups_all = groups_all && r.group_ok;
        closure_all = closure_all && r.closure_ok;
        golden_all = golden_all && r.golden_ok;
        if (!r.certified && first_err.empty()) first_err = id + ": " + r.error;
        if (r.diag_ok) {
            decs.push_back(r.decomposition);
            dec_ids.push_back(id);
        }
    }

    report(3, "commutativity and 28-dimension exhaustion", commute_all, first_err);
    report(4, "grading types match the published table", types_all,
           types_all ? "" : first_err);
    report(5, "grading groups match the published table", groups_all,
           groups_all ? "" : first_err);
    report(6, "bracket closure for all decompositions", closure_all,
           closure_all ? "" : first_err);
    report(7, "golden components match", golden_all, golden_all ? "" : first_err);
    report(8, "calibration certified with H1 order 3 and H2 order 6", cal.has_value(),
           cal_err);

    // 9. Mutual non-refinement over all ordered pairs.
    bool nonrefine = decs.size() == 14;
    std::string nr_detail = nonrefine ? "" : "not all decompositions available";
    for (std::size_t i = 0; i < decs.size() && nonrefine; ++i)
        for (std::size_t j = 0; j < decs.size(); ++j) {
            if (i == j) continue;
            if (refines(decs[i], decs[j])) {
                nonrefine = false;
                nr_detail = dec_ids[i] + " refines " + dec_ids[j];
                break;
            }
        }
    report(9, "mutual non-refinement of the fourteen gradings", nonrefine, nr_detail);

    std::string detail;
    report(10, "property suites", criterion_properties(detail), detail);

    if (g_failures) std::printf("%d criterion(s) FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
