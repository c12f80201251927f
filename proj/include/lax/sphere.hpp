#pragma once

#include <string>
#include <vector>

#include "catalogue.hpp"
#include "poisson.hpp"

// Expected values for the odd-sphere family: rank-2n trivial bundle over
// S^{2n-1} with the orthogonal-projection anchor, the constant complex
// structure J and the bisection carried by the same matrix.
namespace lax {
namespace sphere {

// [e_a, e_b] = -x^b e_a + x^a e_b
inline Section expected_frame_bracket(const RingCtx& R, std::size_t m, std::size_t a,
                                      std::size_t b) {
    Section s(m, Poly{});
    s[a] = s[a] - R.var(b);
    s[b] = s[b] + R.var(a);
    return s;
}

// L_{e_a} e^b = delta^b_a sum_c x^c e^c - x^a e^b
inline Section expected_lie(const RingCtx& R, std::size_t m, std::size_t a, std::size_t b) {
    Section s(m, Poly{});
    if (a == b)
        for (std::size_t c = 0; c < m; ++c) s[c] = s[c] + R.var(c);
    s[b] = s[b] - R.var(a);
    for (auto& v : s) v = R.reduce(v);
    return s;
}

// the four coframe families of the bisection bracket [e^a, e^b]_{Jt}
inline Section expected_jt_bracket(const RingCtx& R, std::size_t n, std::size_t a,
                                   std::size_t b) {
    std::size_t m = 2 * n;
    Section s(m, Poly{});
    bool alow = a < n, blow = b < n;
    if (alow && blow) {
        s[b] = s[b] - R.var(a + n);
        s[a] = s[a] + R.var(b + n);
    } else if (!alow && !blow) {
        s[b] = s[b] + R.var(a - n);
        s[a] = s[a] - R.var(b - n);
    } else if (alow && !blow) {
        std::size_t beta = b - n;
        if (beta == a)
            for (std::size_t g = 0; g < m; ++g) s[g] = s[g] + R.constant(2) * R.var(g);
        s[b] = s[b] - R.var(a + n);
        s[a] = s[a] - R.var(beta);
    } else {  // mirror of the mixed case
        Section t = expected_jt_bracket(R, n, b, a);
        for (std::size_t c = 0; c < m; ++c) s[c] = -t[c];
    }
    for (auto& v : s) v = R.reduce(v);
    return s;
}

// deformed family on the pair (e^alpha, e^{beta+n}):
//   x^alpha e^{beta+n} - x^{beta+n} e^alpha
//     - 2 delta^beta_alpha sum_g (x^g e^{g+n} - x^{g+n} e^g)
inline Section expected_deformed(const RingCtx& R, std::size_t n, std::size_t alpha,
                                 std::size_t beta) {
    std::size_t m = 2 * n;
    Section s(m, Poly{});
    s[beta + n] = s[beta + n] + R.var(alpha);
    s[alpha] = s[alpha] - R.var(beta + n);
    if (alpha == beta)
        for (std::size_t g = 0; g < n; ++g) {
            s[g + n] = s[g + n] - R.constant(2) * R.var(g);
            s[g] = s[g] + R.constant(2) * R.var(g + n);
        }
    for (auto& v : s) v = R.reduce(v);
    return s;
}

// composite-bisection family on (e^alpha, e^{beta+n}): x^alpha e^{beta+n} - x^{beta+n} e^alpha
inline Section expected_composite(const RingCtx& R, std::size_t n, std::size_t alpha,
                                  std::size_t beta) {
    std::size_t m = 2 * n;
    Section s(m, Poly{});
    s[beta + n] = s[beta + n] + R.var(alpha);
    s[alpha] = s[alpha] - R.var(beta + n);
    return s;
}

// closed form of [Jt, Jt]: coefficient on a < e < d is
//   -4 (J^{ae} u_d + J^{ed} u_a + J^{da} u_e)  with  u = J x.
// Zero when n = 1; nonzero for every n >= 2.
inline Skew expected_self_bracket(const Algebroid& A, const Mat& J) {
    const RingCtx& R = A.R;
    std::size_t m = A.m;
    std::vector<Poly> u(m, Poly{});
    for (std::size_t a = 0; a < m; ++a) {
        Poly v;
        for (std::size_t b = 0; b < m; ++b)
            if (!J[a][b].is_zero()) v += J[a][b] * R.var(b);
        u[a] = R.reduce(v);
    }
    Skew out(3);
    for (unsigned char a = 0; a < m; ++a)
        for (unsigned char e = a + 1; e < m; ++e)
            for (unsigned char d = e + 1; d < m; ++d) {
                Poly w = J[a][e] * u[d] + J[e][d] * u[a] + J[d][a] * u[e];
                w = R.reduce(R.constant(-4) * w);
                if (!w.is_zero()) out.add_term(Idx{a, e, d}, w);
            }
    return out;
}

// induced base bivector of the bisection: W = rho J rho^t = J + x u^t - u x^t
inline Mat induced_base_matrix(const Algebroid& A, const Mat& P) {
    const RingCtx& R = A.R;
    std::size_t n = R.nvars();
    Mat W = mat_zero(n, n, R);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Poly v;
            for (std::size_t a = 0; a < A.m; ++a)
                for (std::size_t b = 0; b < A.m; ++b)
                    if (!A.anchor[a][i].is_zero() && !P[a][b].is_zero() &&
                        !A.anchor[b][j].is_zero())
                        v += A.anchor[a][i] * P[a][b] * A.anchor[b][j];
            W[i][j] = R.reduce(v);
        }
    return W;
}

// exact rational points via inverse stereographic projection of rational tuples
inline std::vector<std::vector<QI>> rational_points(std::size_t dim, std::size_t count,
                                                    unsigned long seed) {
    std::vector<std::vector<QI>> pts;
    unsigned long state = seed * 6364136223846793005ULL + 1442695040888963407ULL;
    auto next = [&]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return (state >> 33);
    };
    while (pts.size() < count) {
        std::vector<mpq_class> u(dim - 1);
        for (auto& c : u) {
            long p = static_cast<long>(next() % 9) - 4;
            long q = static_cast<long>(next() % 4) + 1;
            c = mpq_class(p, q);
            c.canonicalize();
        }
        mpq_class s2 = 0;
        for (auto& c : u) s2 += c * c;
        mpq_class den = 1 + s2;
        std::vector<QI> x(dim);
        for (std::size_t i = 0; i + 1 < dim; ++i) x[i] = QI(2 * u[i] / den);
        x[dim - 1] = QI((s2 - 1) / den);
        pts.push_back(std::move(x));
    }
    return pts;
}

struct GoldenReport {
    bool ok = true;
    bool self_bracket_vanishes = false;  // true exactly when n = 1
    std::vector<std::string> failures;
};

// checks every displayed family for the sphere of the given half-rank:
// structure equations, frame brackets, Lie derivatives, the four bisection
// bracket families, the deformed and composite families, vanishing torsion,
// and the self-bracket of the bisection against its closed form.
inline GoldenReport golden_check(std::size_t n) {
    Model M = catalogue::sphere(n);
    Algebroid& A = M.A;
    const RingCtx& R = A.R;
    std::size_t m = A.m;
    GoldenReport rep;
    auto fail = [&](const std::string& what) {
        rep.ok = false;
        rep.failures.push_back(what);
    };
    if (!A.verify().ok) fail("structure equations");
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            Section got = A.bracket(A.unit(a), A.unit(b));
            Section want = expected_frame_bracket(R, m, a, b);
            for (std::size_t c = 0; c < m; ++c)
                if (!R.eq(got[c], want[c])) {
                    fail("frame bracket " + std::to_string(a + 1) + "," + std::to_string(b + 1));
                    break;
                }
        }
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            Skew w(1);
            w.add_term(Idx{(unsigned char)b}, R.constant(1));
            Skew got = A.lie_form(A.unit(a), w);
            if (!skew_eq(R, got, from_section(expected_lie(R, m, a, b))))
                fail("Lie derivative " + std::to_string(a + 1) + "," + std::to_string(b + 1));
        }
    const Mat& Jt = M.bisections.at("Jt");
    Skew pi = matrix_to_skew(R, Jt);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            if (a == b) continue;
            Section got = form_bracket(A, pi, unit_covector(R, m, a), unit_covector(R, m, b));
            Section want = expected_jt_bracket(R, n, a, b);
            for (std::size_t c = 0; c < m; ++c)
                if (!R.eq(got[c], want[c])) {
                    fail("bisection bracket " + std::to_string(a + 1) + "," +
                         std::to_string(b + 1));
                    break;
                }
        }
    const Mat& J = M.endos.at("J");
    Mat JJt = mat_mul(R, J, Jt);
    for (std::size_t al = 0; al < n; ++al)
        for (std::size_t be = 0; be < n; ++be) {
            Section got = deformed_bracket(A, Jt, J, unit_covector(R, m, al),
                                           unit_covector(R, m, be + n));
            Section want = expected_deformed(R, n, al, be);
            for (std::size_t c = 0; c < m; ++c)
                if (!R.eq(got[c], want[c])) {
                    fail("deformed bracket " + std::to_string(al + 1) + "," +
                         std::to_string(be + n + 1));
                    break;
                }
            Section got2 = general_bracket(A, JJt, unit_covector(R, m, al),
                                           unit_covector(R, m, be + n));
            Section want2 = expected_composite(R, n, al, be);
            for (std::size_t c = 0; c < m; ++c)
                if (!R.eq(got2[c], want2[c])) {
                    fail("composite bracket " + std::to_string(al + 1) + "," +
                         std::to_string(be + n + 1));
                    break;
                }
        }
    if (!nijenhuis_is_zero(A, J)) fail("torsion of J");
    PoissonVerdict v = is_poisson(A, pi);
    rep.self_bracket_vanishes = v.poisson;
    if (!skew_eq(R, v.residual, expected_self_bracket(A, Jt))) fail("self-bracket closed form");
    if ((n == 1) != v.poisson) fail("self-bracket vanishing pattern");
    return rep;
}

// displayed concomitant defect of (sign Jt, J) on the pair (a, a+n):
//   -2 sign sum_{g != a} (x^g e^{g+n} - x^{g+n} e^g) .
// The sum is empty at n = 1, matching the compatible verdict there.
inline Section expected_concomitant_defect(const RingCtx& R, std::size_t n, std::size_t a,
                                           int sign) {
    std::size_t m = 2 * n;
    Section s(m, Poly{});
    for (std::size_t g = 0; g < n; ++g) {
        if (g == a) continue;
        s[g + n] = s[g + n] - R.constant(2 * sign) * R.var(g);
        s[g] = s[g] + R.constant(2 * sign) * R.var(g + n);
    }
    for (auto& v : s) v = R.reduce(v);
    return s;
}

// full concomitant law of (sign Jt, J) on an arbitrary coframe pair a < b:
//   2 sign (x^a e^b - x^b e^a)
//     - 2 sign delta_{b,a+n} sum_g (x^g e^{g+n} - x^{g+n} e^g) ,
// which collapses to expected_concomitant_defect on the pairs (a, a+n) and is
// identically zero when n = 1
inline Section expected_concomitant_value(const RingCtx& R, std::size_t n, std::size_t a,
                                          std::size_t b, int sign) {
    std::size_t m = 2 * n;
    Section s(m, Poly{});
    s[b] = s[b] + R.constant(2 * sign) * R.var(a);
    s[a] = s[a] - R.constant(2 * sign) * R.var(b);
    if (a < n && b == a + n)
        for (std::size_t g = 0; g < n; ++g) {
            s[g + n] = s[g + n] - R.constant(2 * sign) * R.var(g);
            s[g] = s[g] + R.constant(2 * sign) * R.var(g + n);
        }
    for (auto& v : s) v = R.reduce(v);
    return s;
}

// the displayed 3x3 bracket matrix {x^i, x^j} of the n = 2 sphere: the
// top-left block of the induced base bivector rho Jt rho^t
inline Mat reproduce_n2_matrix() {
    Model M = catalogue::sphere(2);
    Mat W = induced_base_matrix(M.A, M.bisections.at("Jt"));
    Mat out = mat_zero(3, 3, M.A.R);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) out[i][j] = W[i][j];
    return out;
}

// dichotomy report for the pair (Jt, J) on the sphere of half-rank n
struct CompatReport {
    std::size_t n = 0;
    bool families_ok = false;       // every displayed bracket family reproduced
    bool jt_poisson = false;        // [Jt, Jt] = 0, true exactly at n = 1
    bool j_torsion_free = false;
    bool plus_compatible = false;   // sharp intertwines and concomitant vanishes, +Jt
    bool minus_compatible = false;  // same for the sign-flipped bisection
    bool defects_match = false;     // nonzero concomitant values equal the closed family
    PNVerdict plus, minus;
    // headline verdict: the sign-flipped realization works at n = 1 and
    // nothing works from n = 2 on
    bool compatible() const { return jt_poisson && j_torsion_free && minus_compatible; }
};

inline CompatReport compat_report(std::size_t n) {
    Model M = catalogue::sphere(n);
    Algebroid& A = M.A;
    const RingCtx& R = A.R;
    const Mat& Jt = M.bisections.at("Jt");
    const Mat& J = M.endos.at("J");
    CompatReport rep;
    rep.n = n;
    rep.families_ok = golden_check(n).ok;
    rep.plus = is_poisson_nijenhuis(A, Jt, J);
    rep.minus = is_poisson_nijenhuis(A, mat_scale(QI(-1), Jt), J);
    rep.jt_poisson = rep.plus.poisson;
    rep.j_torsion_free = rep.plus.torsion_free;
    rep.plus_compatible = rep.plus.sharp_intertwines && rep.plus.concomitant_zero;
    rep.minus_compatible = rep.minus.sharp_intertwines && rep.minus.concomitant_zero;
    // every coframe pair is defective from n = 2 on, and each value follows
    // the closed law; at n = 1 the law itself vanishes and the map is empty
    rep.defects_match = true;
    for (int sign : {1, -1}) {
        const auto& defects = (sign == 1 ? rep.plus : rep.minus).defects;
        if (defects.size() != (n >= 2 ? A.m * (A.m - 1) / 2 : 0)) rep.defects_match = false;
        for (const auto& [key, val] : defects) {
            Section want = expected_concomitant_value(R, n, (std::size_t)key.first,
                                                      (std::size_t)key.second, sign);
            for (std::size_t c = 0; c < A.m; ++c)
                if (!R.eq(val[c], want[c])) rep.defects_match = false;
        }
    }
    return rep;
}

// ranks of the induced base bivector at stereographic rational points of the
// sphere; the symplectic leaves have dimension 2n - 2 away from the circle
// x^{2} = ... = x^{2n-1} = 0, so the generic rank is 0 at n = 1 and 2n - 2
// beyond
inline std::vector<std::size_t> foliation_rank_survey(std::size_t n, std::size_t count,
                                                      unsigned long seed = 11) {
    Model M = catalogue::sphere(n);
    auto pts = rational_points(2 * n, count, seed);
    return distribution_rank(M.A, M.bisections.at("Jt"), pts);
}

}  // namespace sphere
}  // namespace lax
