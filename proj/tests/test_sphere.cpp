#include <catch2/catch_amalgamated.hpp>

#include <lax/sphere.hpp>

using namespace lax;

static bool section_eq(const RingCtx& R, const Section& a, const Section& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!R.eq(a[i], b[i])) return false;
    return true;
}

TEST_CASE("golden families for the first three spheres") {
    for (std::size_t n : {std::size_t(1), std::size_t(2), std::size_t(3)}) {
        auto rep = sphere::golden_check(n);
        INFO("n = " << n);
        for (auto& f : rep.failures) INFO(f);
        CHECK(rep.ok);
        CHECK(rep.self_bracket_vanishes == (n == 1));
    }
}

TEST_CASE("self-bracket residual follows its closed form") {
    // the golden suite compares against the closed form; here the raw verdict
    // and one literal coefficient are pinned
    Model M = catalogue::sphere(2);
    auto& A = M.A;
    auto& R = A.R;
    auto v = is_poisson(A, matrix_to_skew(R, M.bisections.at("Jt")));
    CHECK_FALSE(v.poisson);
    CHECK(skew_eq(R, v.residual, sphere::expected_self_bracket(A, M.bisections.at("Jt"))));
    // coefficient on e1^e2^e3 is -4 (J^{12} u_3 + J^{23} u_1 + J^{31} u_2) = 4 x4
    CHECK(R.eq(v.residual.coeff({0, 1, 2}), R.constant(4) * R.var(3)));

    Model M1 = catalogue::sphere(1);
    auto v1 = is_poisson(M1.A, matrix_to_skew(M1.A.R, M1.bisections.at("Jt")));
    CHECK(v1.poisson);
    CHECK(v1.residual.is_zero(M1.A.R));
}

TEST_CASE("displayed bracket matrix of the second sphere") {
    Model M = catalogue::sphere(2);
    auto& R = M.A.R;
    Mat W = sphere::reproduce_n2_matrix();
    REQUIRE(W.size() == 3);
    Poly x = R.var(0), y = R.var(1), z = R.var(2), t = R.var(3);
    Mat want = mat_zero(3, 3, R);
    want[0][1] = R.reduce(y * z - t * x);
    want[0][2] = R.reduce(x * x + z * z - R.constant(1));
    want[1][2] = R.reduce(t * z + x * y);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) want[j][i] = R.reduce(-want[i][j]);
    CHECK(mat_eq(R, W, want));
    CHECK(mat_eq(R, W, mat_scale(QI(-1), mat_transpose(W))));
    // exact values at the point (3/5, 0, 0, 4/5) of the sphere
    std::vector<QI> pt = {QI(mpq_class(3, 5)), QI(0), QI(0), QI(mpq_class(4, 5))};
    R.check_point(pt);
    auto Wp = mat_eval(R, W, pt);
    CHECK(Wp[0][1] == QI(mpq_class(-12, 25)));
    CHECK(Wp[0][2] == QI(mpq_class(-16, 25)));
    CHECK(Wp[1][2] == QI(0));
}

TEST_CASE("poisson-nijenhuis verdict") {
    {
        Model M = catalogue::sphere(1);
        Mat mJt = mat_scale(QI(-1), M.bisections.at("Jt"));
        auto v = is_poisson_nijenhuis(M.A, mJt, M.endos.at("J"));
        CHECK(v.holds());
        // at half-rank one both signs of the bisection work
        auto w = is_poisson_nijenhuis(M.A, M.bisections.at("Jt"), M.endos.at("J"));
        CHECK(w.holds());
    }
    {
        Model M = catalogue::sphere(2);
        auto v = is_poisson_nijenhuis(M.A, M.bisections.at("Jt"), M.endos.at("J"));
        CHECK(v.skew);
        CHECK_FALSE(v.poisson);
        CHECK(v.torsion_free);
        CHECK(v.sharp_intertwines);
        CHECK_FALSE(v.concomitant_zero);
        CHECK(v.defects.size() == 6);  // every coframe pair is defective
        CHECK_FALSE(v.holds());
    }
    {
        // poisson bisection against a torsionful endomorphism
        Model M = catalogue::heisenberg4();
        auto& R = M.A.R;
        Skew pi(2);
        pi.add_term({0, 2}, R.constant(1));
        auto v = is_poisson_nijenhuis(M.A, skew_to_matrix(R, pi, 4), M.endos.at("J"));
        CHECK(v.skew);
        CHECK(v.poisson);
        CHECK_FALSE(v.torsion_free);
        CHECK_FALSE(v.holds());
        // a non-skew matrix is reported, not thrown on
        auto w = is_poisson_nijenhuis(M.A, mat_identity(4, R), M.endos.at("J"));
        CHECK_FALSE(w.skew);
        CHECK_FALSE(w.holds());
    }
}

TEST_CASE("concomitant closed law on all coframe pairs") {
    for (std::size_t n : {std::size_t(1), std::size_t(2)}) {
        Model M = catalogue::sphere(n);
        auto& A = M.A;
        auto& R = A.R;
        std::size_t m = 2 * n;
        for (int sign : {1, -1}) {
            Mat F = mat_scale(QI(sign), M.bisections.at("Jt"));
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = a + 1; b < m; ++b) {
                    Section c = concomitant(A, F, M.endos.at("J"), unit_covector(R, m, a),
                                            unit_covector(R, m, b));
                    INFO("n=" << n << " sign=" << sign << " pair " << a << "," << b);
                    CHECK(section_eq(R, c, sphere::expected_concomitant_value(R, n, a, b, sign)));
                }
            // the diagonal pairs carry exactly the displayed defect family
            for (std::size_t a = 0; a < n; ++a)
                CHECK(section_eq(R, sphere::expected_concomitant_value(R, n, a, a + n, sign),
                                 sphere::expected_concomitant_defect(R, n, a, sign)));
        }
    }
}

TEST_CASE("compatibility dichotomy report") {
    for (std::size_t n : {std::size_t(1), std::size_t(2), std::size_t(3)}) {
        auto rep = sphere::compat_report(n);
        INFO("n = " << n);
        CHECK(rep.n == n);
        CHECK(rep.families_ok);
        CHECK(rep.j_torsion_free);
        CHECK(rep.defects_match);
        CHECK(rep.jt_poisson == (n == 1));
        CHECK(rep.plus_compatible == (n == 1));
        CHECK(rep.minus_compatible == (n == 1));
        CHECK(rep.compatible() == (n == 1));
    }
}

TEST_CASE("foliation rank survey") {
    auto all_eq = [](const std::vector<std::size_t>& v, std::size_t k) {
        for (auto x : v)
            if (x != k) return false;
        return true;
    };
    auto r1 = sphere::foliation_rank_survey(1, 20);
    REQUIRE(r1.size() == 20);
    CHECK(all_eq(r1, 0));
    auto r2 = sphere::foliation_rank_survey(2, 25);
    REQUIRE(r2.size() == 25);
    CHECK(all_eq(r2, 2));
    auto r3 = sphere::foliation_rank_survey(3, 25);
    REQUIRE(r3.size() == 25);
    CHECK(all_eq(r3, 4));
}

TEST_CASE("stereographic sample points lie on the sphere") {
    Model M = catalogue::sphere(2);
    auto pts = sphere::rational_points(4, 25, 7);
    REQUIRE(pts.size() == 25);
    for (auto& pt : pts) M.A.R.check_point(pt);  // throws off the variety
    SUCCEED();
}
