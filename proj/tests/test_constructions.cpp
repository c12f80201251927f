#include <catch2/catch_amalgamated.hpp>

#include <lax/catalogue.hpp>
#include <lax/constructions.hpp>

using namespace lax;

static Connection dense_const_conn(const Algebroid& A, long seed) {
    Connection N = zero_connection(A);
    long v = seed;
    for (std::size_t a = 0; a < A.m; ++a)
        for (std::size_t c = 0; c < A.m; ++c)
            for (std::size_t b = 0; b < A.m; ++b) {
                v = (v * 31 + 7) % 11;
                N.G[a][c][b] = A.R.constant(v - 5);
            }
    return N;
}

static Connection poly_conn_plane4(const Algebroid& A) {
    Connection N = zero_connection(A);
    Poly x = A.R.var(0), y = A.R.var(1);
    N.G[0][1][2] = x;
    N.G[1][0][3] = y;
    N.G[0][0][0] = A.R.reduce(x + A.R.constant(2) * y);
    N.G[2][3][1] = A.R.reduce(x * y);
    N.G[1][2][2] = A.R.constant(1);
    return N;
}

static Skew interleaved_pi20(const RingCtx& R) {
    Skew pi(2);
    pi.add_term(Idx{0, 1}, R.constant(1));
    pi.add_term(Idx{0, 3}, R.constant(-QI::unit_i()));
    pi.add_term(Idx{2, 1}, R.constant(-QI::unit_i()));
    pi.add_term(Idx{2, 3}, R.constant(-1));
    return pi;
}

static Mat minus_identity(const RingCtx& R, std::size_t n) {
    return mat_scale(QI(-1), mat_identity(n, R));
}

TEST_CASE("prolongation doubles the rank and stays a Lie algebroid") {
    auto P1 = prolong(catalogue::abelian(2).A);
    CHECK(P1.total.m == 4);
    CHECK(P1.total.verify().ok);

    auto P2 = prolong(catalogue::so3().A);
    CHECK(P2.total.m == 6);
    CHECK(P2.total.verify().ok);
    // frame brackets of the X's reproduce the base structure functions
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            Section br = P2.total.frame_bracket(a, b);
            Section want(6, Poly{});
            Section base = P2.base.frame_bracket(a, b);
            for (std::size_t c = 0; c < 3; ++c)
                want[c] = promote_poly(base[c], 0, P2.total.R.nvars());
            CHECK(section_equal(P2.total.R, br, want));
        }

    auto P3 = prolong(catalogue::sphere(1).A);
    CHECK(P3.total.verify().ok);
    CHECK(P3.total.R.nvars() == 4);
    CHECK(P3.total.R.rels.size() == 1);
    // anchor of V_a points along the fiber coordinate
    CHECK(P3.total.R.eq(P3.total.anchor[2][2], P3.total.R.one()));
    CHECK(P3.total.R.is_zero(P3.total.anchor[2][0]));
}

TEST_CASE("vertical and complete lifts of sections") {
    auto A = catalogue::so3().A;
    auto P = prolong(A);
    auto& R2 = P.total.R;
    for (int a = 0; a < 3; ++a)
        CHECK(section_equal(R2, clift(P, A.unit(a)), clift_frame(P, a)));
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            CHECK(section_equal(R2, P.total.bracket(clift_frame(P, a), clift_frame(P, b)),
                                clift(P, A.frame_bracket(a, b))));
            CHECK(section_is_zero(R2,
                                  P.total.bracket(vlift(P, A.unit(a)), vlift(P, A.unit(b)))));
            CHECK(section_equal(R2, P.total.bracket(clift_frame(P, a), vlift(P, A.unit(b))),
                                vlift(P, A.frame_bracket(a, b))));
        }
    // complete lift of a function is the fiber-linear anchor derivative
    auto As = catalogue::sphere(1).A;
    auto Ps = prolong(As);
    Poly f = As.R.var(0);
    Poly want;
    for (int c = 0; c < 2; ++c)
        want += promote_poly(As.rho_frame(c, f), 0, Ps.total.R.nvars()) * Ps.fiber_var(c);
    CHECK(Ps.total.R.eq(clift_fun(Ps, f), Ps.total.R.reduce(want)));
}

TEST_CASE("lifts of wedges and brackets of multisections") {
    auto A = catalogue::so3().A;
    auto P = prolong(A);
    auto& R2 = P.total.R;
    Section s1(3, Poly{}), s2(3, Poly{}), t1(3, Poly{});
    s1[0] = A.R.constant(1);
    s1[1] = A.R.constant(2);
    s2[2] = A.R.constant(1);
    s2[0] = A.R.constant(-1);
    t1[1] = A.R.constant(1);
    t1[2] = A.R.constant(3);
    Skew S = wedge(from_section(s1), from_section(s2));
    Skew T = from_section(t1);
    CHECK(skew_eq(R2, vlift(P, wedge(S, T)), wedge(vlift(P, S), vlift(P, T))));
    CHECK(skew_eq(R2, clift(P, wedge(S, T)),
                  wedge(clift(P, S), vlift(P, T)) + wedge(vlift(P, S), clift(P, T))));

    Skew S1 = from_section(A.unit(0)) + from_section(A.unit(1));
    Skew T1 = from_section(A.unit(2));
    Skew S2 = wedge(from_section(A.unit(0)), from_section(A.unit(1)));
    Skew T2 = wedge(from_section(A.unit(1)), from_section(A.unit(2)));
    CHECK(skew_eq(R2, sn_bracket(P.total, clift(P, S1), clift(P, T1)),
                  clift(P, sn_bracket(A, S1, T1))));
    CHECK(skew_eq(R2, sn_bracket(P.total, clift(P, S2), clift(P, T1)),
                  clift(P, sn_bracket(A, S2, T1))));
    CHECK(skew_eq(R2, sn_bracket(P.total, clift(P, S2), clift(P, T2)),
                  clift(P, sn_bracket(A, S2, T2))));
    CHECK(skew_eq(R2, sn_bracket(P.total, clift(P, S2), vlift(P, T2)),
                  vlift(P, sn_bracket(A, S2, T2))));
}

TEST_CASE("connection operators are tensorial and satisfy Leibniz") {
    auto M4 = catalogue::plane4();
    auto& A = M4.A;
    Connection N = zero_connection(A);
    Poly x = A.R.var(0), y = A.R.var(1);
    N.G[0][1][2] = x;
    N.G[1][0][3] = y;
    N.G[3][2][0] = A.R.constant(2);
    N.G[1][1][1] = A.R.reduce(x * x);
    Section s(4, Poly{}), t(4, Poly{}), u(4, Poly{});
    s[0] = A.R.constant(1);
    s[1] = x;
    t[2] = y;
    t[1] = A.R.constant(3);
    u[3] = A.R.reduce(x + y);
    Poly f = A.R.reduce(x * y + A.R.constant(1));
    auto fs = section_scale(A.R, f, s);
    auto ft = section_scale(A.R, f, t);
    auto fu = section_scale(A.R, f, u);
    CHECK(section_equal(A.R, nabla(A, N, fs, t), section_scale(A.R, f, nabla(A, N, s, t))));
    auto leib = section_add(A.R, section_scale(A.R, f, nabla(A, N, s, t)),
                            section_scale(A.R, A.rho(s, f), t));
    CHECK(section_equal(A.R, nabla(A, N, s, ft), leib));
    CHECK(section_equal(A.R, conn_torsion(A, N, fs, t),
                        section_scale(A.R, f, conn_torsion(A, N, s, t))));
    CHECK(section_equal(A.R, conn_curvature(A, N, fs, t, u),
                        section_scale(A.R, f, conn_curvature(A, N, s, t, u))));
    CHECK(section_equal(A.R, conn_curvature(A, N, s, t, fu),
                        section_scale(A.R, f, conn_curvature(A, N, s, t, u))));
}

TEST_CASE("zero connection on so3: torsion is minus the bracket") {
    auto A = catalogue::so3().A;
    auto Z = zero_connection(A);
    Section T = conn_torsion(A, Z, A.unit(0), A.unit(1));
    Section want(3, Poly{});
    want[2] = A.R.constant(-1);
    CHECK(section_equal(A.R, T, want));
    for (int c = 0; c < 3; ++c)
        CHECK(section_is_zero(A.R, conn_curvature(A, Z, A.unit(0), A.unit(1), A.unit(c))));
    // flat abelian case: everything vanishes
    auto Ab = catalogue::abelian(2).A;
    auto Za = zero_connection(Ab);
    CHECK(section_is_zero(Ab.R, conn_torsion(Ab, Za, Ab.unit(0), Ab.unit(1))));
    CHECK(section_is_zero(Ab.R, conn_curvature(Ab, Za, Ab.unit(0), Ab.unit(1), Ab.unit(0))));
}

TEST_CASE("curvature agrees with its closed frame formula") {
    auto check_formula = [](const Algebroid& A, const Connection& N) {
        for (std::size_t a = 0; a < A.m; ++a)
            for (std::size_t b = 0; b < A.m; ++b)
                for (std::size_t c = 0; c < A.m; ++c) {
                    Section got = conn_curvature(A, N, A.unit(static_cast<int>(a)),
                                                 A.unit(static_cast<int>(b)),
                                                 A.unit(static_cast<int>(c)));
                    for (std::size_t e = 0; e < A.m; ++e) {
                        Poly rhs = A.rho_frame(static_cast<int>(a), N.G[b][c][e])
                                   - A.rho_frame(static_cast<int>(b), N.G[a][c][e]);
                        for (std::size_t d = 0; d < A.m; ++d) {
                            rhs += N.G[b][c][d] * N.G[a][d][e];
                            rhs -= N.G[a][c][d] * N.G[b][d][e];
                            rhs -= A.Cc(static_cast<int>(a), static_cast<int>(b),
                                        static_cast<int>(d))
                                   * N.G[d][c][e];
                        }
                        if (!A.R.eq(got[e], rhs)) return false;
                    }
                }
        return true;
    };
    auto A = catalogue::so3().A;
    CHECK(check_formula(A, dense_const_conn(A, 13)));
    auto M4 = catalogue::plane4();
    CHECK(check_formula(M4.A, poly_conn_plane4(M4.A)));
}

TEST_CASE("horizontal lift bracket laws") {
    auto A = catalogue::so3().A;
    auto P = prolong(A);
    auto& R2 = P.total.R;
    // ten connections: mixing lifts stays exact across all of them
    for (long seed = 1; seed <= 10; ++seed) {
        auto N = dense_const_conn(A, seed);
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) {
                Section s = A.unit(a), t = A.unit(b);
                Section hh = P.total.bracket(hlift(P, N, s), hlift(P, N, t));
                Section defect = section_sub(R2, hh, hlift(P, N, A.bracket(s, t)));
                CHECK(section_equal(R2, defect,
                                    section_scale(R2, QI(-1), curvature_vertical(P, N, s, t))));
                CHECK(section_equal(R2, P.total.bracket(hlift(P, N, s), vlift(P, t)),
                                    vlift(P, nabla(A, N, s, t))));
            }
    }
    // polynomial connection with function-coefficient sections
    auto M4 = catalogue::plane4();
    auto P4 = prolong(M4.A);
    auto& R4 = P4.total.R;
    auto N4 = poly_conn_plane4(M4.A);
    Poly x = M4.A.R.var(0);
    Section s(4, Poly{}), t(4, Poly{});
    s[0] = x;
    s[2] = M4.A.R.constant(1);
    t[1] = M4.A.R.constant(1);
    t[3] = M4.A.R.reduce(x * x);
    Section Rv = curvature_vertical(P4, N4, s, t);
    CHECK(!section_is_zero(R4, Rv));
    Section defect = section_sub(R4, P4.total.bracket(hlift(P4, N4, s), hlift(P4, N4, t)),
                                 hlift(P4, N4, M4.A.bracket(s, t)));
    CHECK(section_equal(R4, defect, section_scale(R4, QI(-1), Rv)));
    CHECK(section_equal(R4, P4.total.bracket(hlift(P4, N4, s), vlift(P4, t)),
                        vlift(P4, nabla(M4.A, N4, s, t))));
}

TEST_CASE("projector torsion of the horizontal splitting measures curvature") {
    auto A = catalogue::so3().A;
    auto P = prolong(A);
    auto& R2 = P.total.R;
    for (long seed : {5L, 21L}) {
        auto N = dense_const_conn(A, seed);
        auto h = horizontal_projector(P, N);
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) {
                Section nh = endo_torsion(P.total, h, P.total.unit(a), P.total.unit(b));
                Section Rv = curvature_vertical(P, N, A.unit(a), A.unit(b));
                CHECK(section_equal(R2, nh, section_scale(R2, QI(-1), Rv)));
                CHECK(section_is_zero(
                    R2, endo_torsion(P.total, h, P.total.unit(a), P.total.unit(3 + b))));
            }
    }
}

TEST_CASE("induced complex structure on the prolongation") {
    auto A = catalogue::so3().A;
    auto P = prolong(A);
    auto& R2 = P.total.R;
    auto N = dense_const_conn(A, 9);
    auto J1 = j1_structure(P, N);
    CHECK(mat_eq(R2, mat_mul(R2, J1, J1), minus_identity(R2, 6)));
    for (int a = 0; a < 3; ++a) {
        Section hs = hlift(P, N, A.unit(a)), vs = vlift(P, A.unit(a));
        CHECK(section_equal(R2, apply_endo(R2, J1, hs), vs));
        CHECK(section_equal(R2, apply_endo(R2, J1, vs), section_scale(R2, QI(-1), hs)));
    }
    auto J0 = j1_structure(P, zero_connection(A));
    Mat blk = mat_zero(6, 6, R2);
    for (int a = 0; a < 3; ++a) {
        blk[a][3 + a] = R2.constant(-1);
        blk[3 + a][a] = R2.constant(1);
    }
    CHECK(mat_eq(R2, J0, blk));

    auto M4 = catalogue::plane4();
    auto P4 = prolong(M4.A);
    auto& R4 = P4.total.R;
    auto N4 = poly_conn_plane4(M4.A);
    auto J4 = j1_structure(P4, N4);
    CHECK(mat_eq(R4, mat_mul(R4, J4, J4), minus_identity(R4, 8)));
    Poly x = M4.A.R.var(0), y = M4.A.R.var(1);
    Section s(4, Poly{});
    s[0] = M4.A.R.reduce(x * y);
    s[3] = y;
    CHECK(section_equal(R4, apply_endo(R4, J4, hlift(P4, N4, s)), vlift(P4, s)));
    CHECK(section_equal(R4, apply_endo(R4, J4, vlift(P4, s)),
                        section_scale(R4, QI(-1), hlift(P4, N4, s))));
}

TEST_CASE("complete lift of an endomorphism") {
    auto M = catalogue::heisenberg4();
    auto& A = M.A;
    auto J = M.endos.at("J");
    auto P = prolong(A);
    auto& R2 = P.total.R;
    auto Jc = clift_endo(P, J);
    CHECK(mat_eq(R2, mat_mul(R2, Jc, Jc), minus_identity(R2, 8)));
    for (int a = 0; a < 4; ++a) {
        Section Ja = apply_endo(A.R, J, A.unit(a));
        CHECK(section_equal(R2, apply_endo(R2, Jc, vlift(P, A.unit(a))), vlift(P, Ja)));
        CHECK(section_equal(R2, apply_endo(R2, Jc, clift_frame(P, a)), clift(P, Ja)));
    }
    // torsion of the lift reproduces the lifted torsion
    auto nmap = nijenhuis(A, J);
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            Section nb(4, Poly{});
            auto it = nmap.find({a, b});
            if (it != nmap.end()) nb = it->second;
            CHECK(section_equal(A.R, endo_torsion(A, J, A.unit(a), A.unit(b)), nb));
            CHECK(section_equal(R2,
                                endo_torsion(P.total, Jc, clift_frame(P, a), clift_frame(P, b)),
                                clift(P, nb)));
            CHECK(section_equal(
                R2, endo_torsion(P.total, Jc, clift_frame(P, a), vlift(P, A.unit(b))),
                vlift(P, nb)));
            CHECK(section_is_zero(
                R2, endo_torsion(P.total, Jc, vlift(P, A.unit(a)), vlift(P, A.unit(b)))));
        }
    // constant block case: diag(J, J)
    auto Ab = catalogue::abelian(4).A;
    auto Jb = catalogue::j_interleaved4(Ab.R);
    auto Pb = prolong(Ab);
    auto Jbc = clift_endo(Pb, Jb);
    Mat want = mat_zero(8, 8, Pb.total.R);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
            Poly v = promote_poly(Jb[a][b], 0, Pb.total.R.nvars());
            want[a][b] = v;
            want[4 + a][4 + b] = v;
        }
    CHECK(mat_eq(Pb.total.R, Jbc, want));
    // integrable circle structure lifts to an integrable structure
    auto Ms = catalogue::sphere(1);
    auto Ps = prolong(Ms.A);
    auto Jsc = clift_endo(Ps, Ms.endos.at("J"));
    CHECK(mat_eq(Ps.total.R, mat_mul(Ps.total.R, Jsc, Jsc), minus_identity(Ps.total.R, 4)));
    CHECK(nijenhuis_is_zero(Ms.A, Ms.endos.at("J")));
    CHECK(nijenhuis_is_zero(Ps.total, Jsc));
    // a non-complex matrix is rejected
    Mat bad = mat_identity(4, A.R);
    CHECK_THROWS_AS(clift_endo(P, bad), complex_error);
}

TEST_CASE("lifted decomposable bisection certificate") {
    auto A = catalogue::abelian(2).A;
    auto P = prolong(A);
    auto Z = zero_connection(A);
    auto rep = example_pi_on_prolongation(P, Z, A.unit(0), A.unit(1));
    CHECK(rep.commute);
    CHECK(rep.parallel);
    CHECK(rep.flat);
    CHECK(rep.torsionless);
    CHECK(rep.verdict.acp);
    auto rep2 =
        example_pi_on_prolongation(P, Z, section_scale(A.R, QI(3), A.unit(0)), A.unit(1));
    CHECK(rep2.all_conditions());
    CHECK(rep2.verdict.acp);

    auto A3 = catalogue::so3().A;
    auto P3 = prolong(A3);
    auto rep3 = example_pi_on_prolongation(P3, zero_connection(A3), A3.unit(0), A3.unit(1));
    CHECK(!rep3.commute);
    CHECK(!rep3.torsionless);
    CHECK(rep3.parallel);
    CHECK(rep3.flat);
    CHECK(!rep3.verdict.acp);
}

TEST_CASE("complete lift of an acp pair stays acp") {
    auto M = catalogue::aff_c();
    auto& A = M.A;
    auto J = M.endos.at("J");
    auto pi = M.tensors.at("pi20");
    REQUIRE(is_acp(A, J, pi).acp);
    auto P = prolong(A);
    auto v = is_acp(P.total, clift_endo(P, J), clift(P, pi));
    CHECK(v.acp);
}

TEST_CASE("direct products") {
    auto D1 = direct_product(catalogue::so3().A, catalogue::abelian(1).A);
    CHECK(D1.A.m == 4);
    CHECK(D1.A.verify().ok);
    // first-factor brackets survive, mixed brackets vanish
    CHECK(D1.A.R.eq(D1.A.Cc(0, 1, 2), D1.A.R.one()));
    CHECK(section_is_zero(D1.A.R, D1.A.frame_bracket(0, 3)));

    auto D2 = direct_product(catalogue::sphere(1).A, catalogue::sphere(1).A);
    CHECK(D2.A.R.nvars() == 4);
    CHECK(D2.A.R.vars[2] == "x1_2");
    CHECK(D2.A.R.vars[3] == "x2_2");
    CHECK(D2.A.R.rels.size() == 2);
    CHECK(D2.A.verify().ok);

    auto M = catalogue::aff_c();
    auto D3 = direct_product(M.A, M.A);
    auto JJ = D3.endo_sum(M.endos.at("J"), M.endos.at("J"));
    auto pp = D3.tensor_sum(M.tensors.at("pi20"), M.tensors.at("pi20"));
    CHECK(is_acp(D3.A, JJ, pp).acp);

    // renaming collision: first factor already owns both spellings
    Algebroid X1;
    X1.R = RingCtx({"x1", "x1_2"});
    X1.m = 1;
    X1.anchor.assign(1, std::vector<Poly>(2, Poly{}));
    Algebroid X2;
    X2.R = RingCtx({"x1"});
    X2.m = 1;
    X2.anchor.assign(1, std::vector<Poly>(1, Poly{}));
    CHECK_THROWS_AS(direct_product(X1, X2), construction_error);
}

TEST_CASE("graphs of morphisms") {
    auto A = catalogue::so3().A;
    Morphism id{mat_identity(3, A.R)};
    auto G = graph(A, A, id);
    CHECK(G.ambient.A.m == 6);
    CHECK(G.ambient.A.verify().ok);
    CHECK(subalgebroid_closed(G.ambient.A, G.sub));
    // the annihilator really annihilates the frame
    for (auto& w : *G.sub.annihilator)
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(A.R.is_zero(covector_eval(G.ambient.A.R, w, mat_column(G.sub.frame, i))));

    Mat Rz = mat_zero(3, 3, A.R);
    Rz[0][0] = A.R.constant(QI(mpq_class(3, 5)));
    Rz[0][1] = A.R.constant(QI(mpq_class(-4, 5)));
    Rz[1][0] = A.R.constant(QI(mpq_class(4, 5)));
    Rz[1][1] = A.R.constant(QI(mpq_class(3, 5)));
    Rz[2][2] = A.R.constant(1);
    Morphism rot{Rz};
    REQUIRE(check_morphism(A, A, rot).ok());
    auto G2 = graph(A, A, rot);
    CHECK(subalgebroid_closed(G2.ambient.A, G2.sub));

    Mat bad = mat_identity(3, A.R);
    bad[2][2] = A.R.constant(2);
    CHECK_THROWS_AS(graph(A, A, Morphism{bad}), construction_error);

    CHECK_THROWS_AS(direct_sum_same_base(catalogue::so3().A, catalogue::sphere(1).A),
                    construction_error);
}

TEST_CASE("span membership tiers") {
    auto M4 = catalogue::plane4();
    auto& R = M4.A.R;
    Poly x = R.var(0), y = R.var(1);
    // constant tier
    Mat T1 = mat_zero(3, 2, R);
    T1[0][0] = R.constant(1);
    T1[1][1] = R.constant(1);
    T1[2][0] = R.constant(2);
    Section v1(3, Poly{});
    v1[0] = R.constant(3);
    v1[2] = R.constant(6);
    auto d1 = in_column_span(R, T1, v1);
    CHECK(d1.member);
    CHECK(std::string(d1.mode) == "symbolic");
    v1[2] = R.constant(5);
    CHECK(!in_column_span(R, T1, v1).member);
    // unimodular row block tier: coefficients are forced, identity checked exactly
    Mat T2 = mat_zero(3, 2, R);
    T2[0][0] = R.constant(1);
    T2[1][0] = x;
    T2[1][1] = R.constant(1);
    T2[2][0] = y;
    T2[2][1] = x;
    Section v2(3, Poly{});
    v2[0] = x;
    v2[1] = R.reduce(x * x + y + R.constant(1));
    v2[2] = R.reduce(QI(2) * (x * y) + x);
    auto d2 = in_column_span(R, T2, v2);
    CHECK(d2.member);
    CHECK(std::string(d2.mode) == "symbolic");
    v2[2] = R.reduce(QI(2) * (x * y) + x + R.constant(1));
    CHECK(!in_column_span(R, T2, v2).member);
    // pointwise tier: no constant block anywhere
    Mat T3 = mat_zero(2, 1, R);
    T3[0][0] = x;
    T3[1][0] = y;
    Section v3(2, Poly{});
    v3[0] = R.reduce(x * x);
    v3[1] = R.reduce(x * y);
    auto d3 = in_column_span(R, T3, v3);
    CHECK(d3.member);
    CHECK(std::string(d3.mode) == "pointwise");
    Section v4(2, Poly{});
    v4[0] = y;
    v4[1] = x;
    CHECK(!in_column_span(R, T3, v4).member);
    // rings with relations refuse the sampled tier
    auto As = catalogue::sphere(1).A;
    Mat T5 = mat_zero(2, 1, As.R);
    T5[0][0] = As.R.var(0);
    T5[1][0] = As.R.var(1);
    Section v5(2, Poly{});
    v5[0] = As.R.var(1);
    v5[1] = As.R.var(0);
    CHECK_THROWS_AS(in_column_span(As.R, T5, v5), construction_error);
}

TEST_CASE("coisotropic and lagrangian subalgebroids") {
    auto M = catalogue::aff_c();
    auto& A = M.A;
    auto J = M.endos.at("J");
    auto pi = M.tensors.at("pi20");
    Morphism id{mat_identity(4, A.R)};
    auto G = graph(A, A, id);
    auto J2 = G.ambient.endo_sum(J, J);

    auto c1 = is_coisotropic(G.ambient.A, G.sub, J2, G.ambient.tensor_sum(pi, -pi));
    CHECK(c1.j_invariant);
    CHECK(c1.coisotropic);
    auto l1 = is_lagrangian(G.ambient.A, G.sub, J2, G.ambient.tensor_sum(pi, -pi));
    CHECK(l1.lagrangian);

    auto c2 = is_coisotropic(G.ambient.A, G.sub, J2, G.ambient.tensor_sum(pi, -(pi + pi)));
    CHECK(c2.j_invariant);
    CHECK(!c2.coisotropic);

    Subalgebroid full{mat_identity(4, A.R), std::vector<Skew>{}};
    auto c3 = is_coisotropic(A, full, J, pi);
    CHECK(c3.coisotropic);
    CHECK(std::string(c3.mode) == "trivial");
    CHECK(!is_lagrangian(A, full, J, pi).lagrangian);

    Skew zero_pi(2);
    auto c4 = is_coisotropic(G.ambient.A, G.sub, J2, G.ambient.tensor_sum(zero_pi, zero_pi));
    CHECK(c4.coisotropic);
    CHECK(is_lagrangian(G.ambient.A, G.sub, J2, G.ambient.tensor_sum(zero_pi, zero_pi))
              .lagrangian);

    Subalgebroid noann{mat_identity(4, A.R), std::nullopt};
    CHECK_THROWS_AS(is_coisotropic(A, noann, J, pi), construction_error);
    Skew wrongdeg(1);
    CHECK_THROWS_AS(is_coisotropic(A, full, J, wrongdeg), construction_error);

    // variable-coefficient bisection drives the sampled tier
    auto Mp = catalogue::plane4();
    Morphism idp{mat_identity(4, Mp.A.R)};
    auto Gp = graph(Mp.A, Mp.A, idp);
    auto Jp = Gp.ambient.endo_sum(Mp.endos.at("J"), Mp.endos.at("J"));
    Poly f = Mp.A.R.reduce(Mp.A.R.var(0) * Mp.A.R.var(0) + Mp.A.R.constant(1));
    Skew fpi = f * Mp.tensors.at("pi20");
    auto cp = is_coisotropic(Gp.ambient.A, Gp.sub, Jp, Gp.ambient.tensor_sum(fpi, -fpi));
    CHECK(cp.coisotropic);
    CHECK(std::string(cp.mode) == "pointwise");
    auto lp = is_lagrangian(Gp.ambient.A, Gp.sub, Jp, Gp.ambient.tensor_sum(fpi, -fpi));
    CHECK(lp.lagrangian);
    CHECK(std::string(lp.mode) == "pointwise");
}

TEST_CASE("poisson-related morphisms") {
    auto A = catalogue::abelian(4).A;
    auto& R = A.R;
    auto J = catalogue::j_interleaved4(R);
    Skew pi = interleaved_pi20(R);
    Morphism id{mat_identity(4, R)};
    auto r1 = is_acp_morphism(A, A, id, J, pi, J, pi);
    CHECK(r1.la_morphism);
    CHECK(r1.ac_morphism);
    CHECK(r1.poisson_related);
    CHECK(r1.acp());

    auto r2 = is_acp_morphism(A, A, id, J, pi, J, QI(2) * pi);
    CHECK((r2.la_morphism && r2.ac_morphism));
    CHECK(!r2.poisson_related);

    Mat D = mat_zero(4, 4, R);
    D[0][0] = R.constant(2);
    D[1][1] = R.constant(QI(mpq_class(1, 2)));
    D[2][2] = R.constant(2);
    D[3][3] = R.constant(QI(mpq_class(1, 2)));
    CHECK(is_acp_morphism(A, A, Morphism{D}, J, pi, J, pi).acp());

    Mat twoI = mat_scale(QI(2), mat_identity(4, R));
    auto r4 = is_acp_morphism(A, A, Morphism{twoI}, J, pi, J, pi);
    CHECK(r4.ac_morphism);
    CHECK(!r4.poisson_related);

    auto r5 = is_acp_morphism(A, A, Morphism{J}, J, pi, J, pi);
    CHECK(r5.ac_morphism);
    CHECK(!r5.poisson_related);

    Mat F = mat_identity(4, R);
    F[3][3] = R.constant(-1);
    CHECK(!is_acp_morphism(A, A, Morphism{F}, J, pi, J, pi).ac_morphism);
}

TEST_CASE("a morphism preserves the structure iff its graph is coisotropic") {
    auto M = catalogue::aff_c();
    auto& A = M.A;
    auto J = M.endos.at("J");
    auto pi = M.tensors.at("pi20");
    Morphism id4{mat_identity(4, A.R)};

    auto g1 = graph_theorem_check(A, A, id4, J, pi, J, pi);
    CHECK(g1.morphism.acp());
    CHECK(g1.coisotropy.coisotropic);
    CHECK(g1.agree);

    auto g2 = graph_theorem_check(A, A, id4, J, pi, J, QI(2) * pi);
    CHECK(!g2.morphism.acp());
    CHECK(!g2.coisotropy.coisotropic);
    CHECK(g2.agree);

    auto Ab = catalogue::abelian(4).A;
    auto& Rb = Ab.R;
    auto Jb = catalogue::j_interleaved4(Rb);
    Skew pb = interleaved_pi20(Rb);
    Mat D = mat_zero(4, 4, Rb);
    D[0][0] = Rb.constant(2);
    D[1][1] = Rb.constant(QI(mpq_class(1, 2)));
    D[2][2] = Rb.constant(2);
    D[3][3] = Rb.constant(QI(mpq_class(1, 2)));
    auto g3 = graph_theorem_check(Ab, Ab, Morphism{D}, Jb, pb, Jb, pb);
    CHECK(g3.morphism.acp());
    CHECK(g3.agree);

    auto g4 = graph_theorem_check(Ab, Ab, Morphism{mat_scale(QI(2), mat_identity(4, Rb))},
                                  Jb, pb, Jb, pb);
    CHECK(!g4.morphism.acp());
    CHECK(g4.agree);

    auto g5 = graph_theorem_check(Ab, Ab, Morphism{Jb}, Jb, pb, Jb, pb);
    CHECK(!g5.morphism.acp());
    CHECK(g5.agree);

    Mat F = mat_identity(4, Rb);
    F[3][3] = Rb.constant(-1);
    auto g6 = graph_theorem_check(Ab, Ab, Morphism{F}, Jb, pb, Jb, pb);
    CHECK(!g6.morphism.acp());
    CHECK(!g6.coisotropy.j_invariant);
    CHECK(g6.agree);

    auto Mp = catalogue::plane4();
    Morphism idp{mat_identity(4, Mp.A.R)};
    auto g7 = graph_theorem_check(Mp.A, Mp.A, idp, Mp.endos.at("J"), Mp.tensors.at("pi20"),
                                  Mp.endos.at("J"), Mp.tensors.at("pi20"));
    CHECK(g7.morphism.acp());
    CHECK(g7.agree);
}
