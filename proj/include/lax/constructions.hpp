#pragma once

#include "complexify.hpp"

#include <cstring>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lax {

struct construction_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- section arithmetic ----

inline Section section_add(const RingCtx& R, const Section& a, const Section& b) {
    Section out(a.size(), Poly{});
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = R.reduce(a[k] + b[k]);
    return out;
}

inline Section section_sub(const RingCtx& R, const Section& a, const Section& b) {
    Section out(a.size(), Poly{});
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = R.reduce(a[k] - b[k]);
    return out;
}

inline Section section_scale(const RingCtx& R, const QI& c, const Section& s) {
    Section out(s.size(), Poly{});
    for (std::size_t k = 0; k < s.size(); ++k) out[k] = R.reduce(c * s[k]);
    return out;
}

inline Section section_scale(const RingCtx& R, const Poly& f, const Section& s) {
    Section out(s.size(), Poly{});
    for (std::size_t k = 0; k < s.size(); ++k) out[k] = R.reduce(f * s[k]);
    return out;
}

inline bool section_is_zero(const RingCtx& R, const Section& s) {
    for (auto& v : s)
        if (!R.is_zero(v)) return false;
    return true;
}

inline bool section_equal(const RingCtx& R, const Section& a, const Section& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (!R.eq(a[k], b[k])) return false;
    return true;
}

// evaluate a degree-1 coframe element on a section
inline Poly covector_eval(const RingCtx& R, const Skew& w, const Section& s) {
    Poly tot;
    for (std::size_t a = 0; a < s.size(); ++a) {
        Poly c = w.coeff(Idx{static_cast<unsigned char>(a)});
        if (!c.is_zero() && !s[a].is_zero()) tot += c * s[a];
    }
    return R.reduce(tot);
}

// ---- moving tensors into a bigger ring / bigger frame ----
// The target ring must contain the source variables as a contiguous block
// starting at var_offset; frame indices are shifted by idx_offset.

inline Poly promote_poly(const Poly& f, std::size_t var_offset, std::size_t new_nvars) {
    Poly out;
    for (auto& [mo, c] : f.terms) {
        Mono m2(new_nvars);
        for (std::size_t k = 0; k < mo.e.size(); ++k) m2.e[var_offset + k] = mo.e[k];
        out.terms.emplace(std::move(m2), c);
    }
    return out;
}

inline Section promote_section(const Section& s, std::size_t var_offset, std::size_t new_nvars,
                               std::size_t idx_offset, std::size_t new_m) {
    Section out(new_m, Poly{});
    for (std::size_t a = 0; a < s.size(); ++a)
        out[idx_offset + a] = promote_poly(s[a], var_offset, new_nvars);
    return out;
}

inline Skew promote_skew(const Skew& S, std::size_t var_offset, std::size_t new_nvars,
                         std::size_t idx_offset) {
    Skew out(S.deg);
    for (auto& [k, v] : S.terms) {
        Idx k2 = k;
        for (auto& idx : k2) idx = static_cast<unsigned char>(idx + idx_offset);
        out.terms.emplace(std::move(k2), promote_poly(v, var_offset, new_nvars));
    }
    return out;
}

// ---- prolongation ----
// The rank doubles: frame {X_a} (indices 0..m-1) projects onto the base frame,
// frame {V_a} (indices m..2m-1) spans the fiber directions. The coordinate
// ring gains one fiber variable per base frame section. Brackets of the X's
// reproduce the base structure functions, every bracket involving a V vanishes
// on the frame, and the anchor sends X_a to the base anchor row and V_a to the
// fiber derivative.

struct Prolongation {
    Algebroid base;
    Algebroid total;

    std::size_t m() const { return base.m; }
    Poly fiber_var(std::size_t a) const { return total.R.var(base.n() + a); }
};

inline Prolongation prolong(const Algebroid& A) {
    Prolongation P;
    P.base = A;
    RingCtx R2(A.R.vars);
    for (std::size_t a = 0; a < A.m; ++a) {
        std::string nm = "y" + std::to_string(a + 1);
        while (R2.var_index(nm) >= 0) nm = "f" + nm;   // dodge a base coordinate named y<k>
        R2.vars.push_back(nm);
    }
    const std::size_t N = R2.nvars();
    for (auto& rel : A.R.rels) R2.rels.push_back({rel.var, promote_poly(rel.tail, 0, N)});
    const std::size_t m = A.m, n = A.n();
    P.total.R = std::move(R2);
    P.total.m = 2 * m;
    P.total.anchor.assign(2 * m, std::vector<Poly>(N, Poly{}));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t i = 0; i < n; ++i)
            P.total.anchor[a][i] = promote_poly(A.anchor[a][i], 0, N);
    for (std::size_t a = 0; a < m; ++a) P.total.anchor[m + a][n + a] = P.total.R.one();
    for (auto& [key, row] : A.C) {
        Section r2(2 * m, Poly{});
        for (std::size_t c = 0; c < m; ++c) r2[c] = promote_poly(row[c], 0, N);
        P.total.C.emplace(key, std::move(r2));
    }
    return P;
}

// ---- vertical and complete lifts ----

inline Section vlift(const Prolongation& P, const Section& s) {
    return promote_section(s, 0, P.total.R.nvars(), P.m(), P.total.m);
}

inline Skew vlift(const Prolongation& P, const Skew& S) {
    return promote_skew(S, 0, P.total.R.nvars(), P.m());
}

// complete lift of a coefficient function: the fiber-linear derivative y^c rho(e_c)(f)
inline Poly clift_fun(const Prolongation& P, const Poly& f) {
    const std::size_t N = P.total.R.nvars();
    Poly out;
    for (std::size_t c = 0; c < P.m(); ++c) {
        Poly d = P.base.rho_frame(static_cast<int>(c), f);
        if (!d.is_zero()) out += promote_poly(d, 0, N) * P.fiber_var(c);
    }
    return P.total.R.reduce(out);
}

// complete lift of a frame section: X_a corrected by the structure functions
inline Section clift_frame(const Prolongation& P, int a) {
    const std::size_t m = P.m(), N = P.total.R.nvars();
    Section s(2 * m, Poly{});
    s[a] = P.total.R.one();
    for (std::size_t b = 0; b < m; ++b) {
        Poly acc;
        for (std::size_t c = 0; c < m; ++c) {
            Poly k = P.base.Cc(a, static_cast<int>(c), static_cast<int>(b));
            if (!k.is_zero()) acc += promote_poly(k, 0, N) * P.fiber_var(c);
        }
        if (!acc.is_zero()) s[m + b] = P.total.R.reduce(-acc);
    }
    return s;
}

// complete lift of a multisection, extended from functions and frame sections
// by the product rule (S^T)^c = S^c^T^v + S^v^T^c
inline Skew clift(const Prolongation& P, const Skew& S) {
    const std::size_t m = P.m(), N = P.total.R.nvars();
    Skew out(S.deg);
    if (S.deg == 0) {
        Poly f = S.coeff(Idx{});
        out.add_term(Idx{}, clift_fun(P, f));
        return out;
    }
    for (auto& [k, v] : S.terms) {
        Idx kv = k;
        for (auto& idx : kv) idx = static_cast<unsigned char>(idx + m);
        out.add_term(kv, clift_fun(P, v));
        Poly fv = promote_poly(v, 0, N);
        for (std::size_t pos = 0; pos < k.size(); ++pos) {
            Skew w(0);
            w.add_term(Idx{}, P.total.R.one());
            for (std::size_t l = 0; l < k.size(); ++l) {
                Section fac = (l == pos) ? clift_frame(P, k[l]) : P.total.unit(static_cast<int>(m + k[l]));
                w = wedge(w, from_section(fac));
            }
            out += fv * w;
        }
    }
    out.reduce(P.total.R);
    return out;
}

inline Section clift(const Prolongation& P, const Section& s) {
    return to_section(clift(P, from_section(s)), P.total.m);
}

// complete lift of an endomorphism, pinned down by J^c s^v = (J s)^v and
// J^c s^c = (J s)^c; block-triangular with the promoted matrix on both
// diagonal blocks and a fiber-linear lower-left correction.
inline Mat clift_endo(const Prolongation& P, const Mat& J) {
    require_almost_complex(P.base, J);
    const std::size_t m = P.m(), N = P.total.R.nvars();
    const RingCtx& R2 = P.total.R;
    Mat out = mat_zero(2 * m, 2 * m, R2);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            Poly j = promote_poly(J[a][b], 0, N);
            out[a][b] = j;
            out[m + a][m + b] = j;
        }
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            Poly acc;
            for (std::size_t c = 0; c < m; ++c) {
                Poly term = P.base.rho_frame(static_cast<int>(c), J[a][b]);
                for (std::size_t d = 0; d < m; ++d) {
                    Poly cda = P.base.Cc(static_cast<int>(d), static_cast<int>(c), static_cast<int>(a));
                    if (!cda.is_zero()) term -= cda * J[d][b];
                    Poly cbd = P.base.Cc(static_cast<int>(b), static_cast<int>(c), static_cast<int>(d));
                    if (!cbd.is_zero()) term += J[a][d] * cbd;
                }
                if (!term.is_zero()) acc += promote_poly(P.base.R.reduce(term), 0, N) * P.fiber_var(c);
            }
            if (!acc.is_zero()) out[m + a][b] = R2.reduce(acc);
        }
    return out;
}

// ---- linear connections ----

struct Connection {
    // G[a][c][b]: the derivative of e_c along e_a has e_b coefficient G[a][c][b]
    std::vector<std::vector<std::vector<Poly>>> G;
};

inline Connection zero_connection(const Algebroid& A) {
    Connection N;
    N.G.assign(A.m, std::vector<std::vector<Poly>>(A.m, std::vector<Poly>(A.m, Poly{})));
    return N;
}

// function-linear in the direction, derivation in the argument
inline Section nabla(const Algebroid& A, const Connection& N, const Section& s, const Section& t) {
    Section out(A.m, Poly{});
    for (std::size_t b = 0; b < A.m; ++b) out[b] = A.rho(s, t[b]);
    for (std::size_t a = 0; a < A.m; ++a) {
        if (s[a].is_zero()) continue;
        for (std::size_t c = 0; c < A.m; ++c) {
            if (t[c].is_zero()) continue;
            for (std::size_t b = 0; b < A.m; ++b)
                if (!N.G[a][c][b].is_zero()) out[b] += s[a] * t[c] * N.G[a][c][b];
        }
    }
    for (auto& v : out) v = A.R.reduce(v);
    return out;
}

inline Section conn_torsion(const Algebroid& A, const Connection& N, const Section& s,
                            const Section& t) {
    return section_sub(A.R, section_sub(A.R, nabla(A, N, s, t), nabla(A, N, t, s)),
                       A.bracket(s, t));
}

inline Section conn_curvature(const Algebroid& A, const Connection& N, const Section& s,
                              const Section& t, const Section& u) {
    Section c1 = nabla(A, N, s, nabla(A, N, t, u));
    Section c2 = nabla(A, N, t, nabla(A, N, s, u));
    Section c3 = nabla(A, N, A.bracket(s, t), u);
    return section_sub(A.R, section_sub(A.R, c1, c2), c3);
}

// ---- horizontal lift and the induced complex structure ----

inline Section hlift(const Prolongation& P, const Connection& N, const Section& s) {
    const std::size_t m = P.m(), NV = P.total.R.nvars();
    Section out(2 * m, Poly{});
    for (std::size_t a = 0; a < m; ++a) out[a] = promote_poly(s[a], 0, NV);
    for (std::size_t b = 0; b < m; ++b) {
        Poly acc;
        for (std::size_t a = 0; a < m; ++a) {
            if (s[a].is_zero()) continue;
            for (std::size_t c = 0; c < m; ++c)
                if (!N.G[a][c][b].is_zero())
                    acc += promote_poly(P.base.R.reduce(s[a] * N.G[a][c][b]), 0, NV) * P.fiber_var(c);
        }
        if (!acc.is_zero()) out[m + b] = P.total.R.reduce(-acc);
    }
    return out;
}

// projector onto the horizontal subbundle, vanishing on the fiber directions
inline Mat horizontal_projector(const Prolongation& P, const Connection& N) {
    const std::size_t m = P.m(), NV = P.total.R.nvars();
    Mat h = mat_zero(2 * m, 2 * m, P.total.R);
    for (std::size_t a = 0; a < m; ++a) {
        h[a][a] = P.total.R.one();
        for (std::size_t b = 0; b < m; ++b) {
            Poly acc;
            for (std::size_t c = 0; c < m; ++c)
                if (!N.G[a][c][b].is_zero()) acc += promote_poly(N.G[a][c][b], 0, NV) * P.fiber_var(c);
            if (!acc.is_zero()) h[m + b][a] = P.total.R.reduce(-acc);
        }
    }
    return h;
}

// the curvature of the splitting, realized as the fiber-linear vertical section
// carrying y^c against the endomorphism slot of R(s,t)
inline Section curvature_vertical(const Prolongation& P, const Connection& N, const Section& s,
                                  const Section& t) {
    const std::size_t m = P.m(), NV = P.total.R.nvars();
    Section out(2 * m, Poly{});
    for (std::size_t c = 0; c < m; ++c) {
        Section rc = conn_curvature(P.base, N, s, t, P.base.unit(static_cast<int>(c)));
        for (std::size_t b = 0; b < m; ++b)
            if (!rc[b].is_zero()) out[m + b] += promote_poly(rc[b], 0, NV) * P.fiber_var(c);
    }
    for (auto& v : out) v = P.total.R.reduce(v);
    return out;
}

// Nijenhuis-type torsion of an arbitrary endomorphism:
// [Fs,Ft] - F[s,Ft] - F[Fs,t] + F^2 [s,t]
inline Section endo_torsion(const Algebroid& A, const Mat& F, const Section& s,
                            const Section& t) {
    const RingCtx& R = A.R;
    Section fs = apply_endo(R, F, s), ft = apply_endo(R, F, t);
    Section out = A.bracket(fs, ft);
    out = section_sub(R, out, apply_endo(R, F, A.bracket(s, ft)));
    out = section_sub(R, out, apply_endo(R, F, A.bracket(fs, t)));
    out = section_add(R, out, apply_endo(R, F, apply_endo(R, F, A.bracket(s, t))));
    return out;
}

// the complex structure swapping horizontal and vertical lifts:
// s^h -> s^v, s^v -> -s^h, written out on the (X, V) frame
inline Mat j1_structure(const Prolongation& P, const Connection& N) {
    const std::size_t m = P.m(), NV = P.total.R.nvars();
    const RingCtx& R2 = P.total.R;
    Mat J = mat_zero(2 * m, 2 * m, R2);
    auto gamma = [&](std::size_t a, std::size_t c, std::size_t b) {
        return promote_poly(N.G[a][c][b], 0, NV);
    };
    for (std::size_t a = 0; a < m; ++a) {
        J[a][m + a] = R2.constant(-1);
        for (std::size_t b = 0; b < m; ++b) {
            Poly accv, acch;
            for (std::size_t c = 0; c < m; ++c) {
                Poly g = gamma(a, c, b);
                if (g.is_zero()) continue;
                accv += g * P.fiber_var(c);
                acch += g * P.fiber_var(c);
            }
            if (!accv.is_zero()) J[m + b][m + a] = R2.reduce(accv);
            if (!acch.is_zero()) J[b][a] = R2.reduce(-acch);
        }
        J[m + a][a] = R2.one();
        for (std::size_t d = 0; d < m; ++d) {
            Poly acc;
            for (std::size_t b = 0; b < m; ++b)
                for (std::size_t c = 0; c < m; ++c) {
                    Poly g1 = gamma(a, c, b);
                    if (g1.is_zero()) continue;
                    for (std::size_t e = 0; e < m; ++e) {
                        Poly g2 = gamma(b, e, d);
                        if (!g2.is_zero()) acc += g1 * g2 * P.fiber_var(c) * P.fiber_var(e);
                    }
                }
            if (!acc.is_zero()) J[m + d][a] += R2.reduce(acc);
        }
    }
    for (auto& row : J)
        for (auto& v : row) v = R2.reduce(v);
    return J;
}

// decomposable bisection built from a pair of lifted sections, together with
// the certificate of the four conditions that make it almost complex Poisson
struct LiftedPairReport {
    Skew pi20{2};
    bool commute = false, parallel = false, flat = false, torsionless = false;
    AcpVerdict verdict;
    bool all_conditions() const { return commute && parallel && flat && torsionless; }
};

inline LiftedPairReport example_pi_on_prolongation(const Prolongation& P, const Connection& N,
                                                   const Section& s1, const Section& s2) {
    LiftedPairReport rep;
    const RingCtx& R2 = P.total.R;
    const QI mi = -QI::unit_i();
    Section a1 = section_add(R2, hlift(P, N, s1), section_scale(R2, mi, vlift(P, s1)));
    Section a2 = section_add(R2, hlift(P, N, s2), section_scale(R2, mi, vlift(P, s2)));
    rep.pi20 = wedge(from_section(a1), from_section(a2));
    rep.pi20.reduce(R2);
    rep.commute = section_is_zero(P.base.R, P.base.bracket(s1, s2));
    rep.parallel = section_is_zero(P.base.R, nabla(P.base, N, s1, s2));
    rep.torsionless = section_is_zero(P.base.R, conn_torsion(P.base, N, s1, s2));
    rep.flat = true;
    for (std::size_t c = 0; c < P.m() && rep.flat; ++c)
        if (!section_is_zero(P.base.R,
                             conn_curvature(P.base, N, s1, s2, P.base.unit(static_cast<int>(c)))))
            rep.flat = false;
    rep.verdict = is_acp(P.total, j1_structure(P, N), rep.pi20);
    if (rep.all_conditions() && !rep.verdict.acp)
        throw std::logic_error(
            "a commuting, parallel, flat, torsionless pair must lift to an almost complex "
            "Poisson bisection");
    return rep;
}

// ---- direct products ----
// Disjoint union of the coordinate rings (second factor renamed on collision),
// block-diagonal anchor, mixed brackets zero.

struct Product {
    Algebroid A;
    std::size_t m1 = 0, m2 = 0, n1 = 0, n2 = 0;

    Mat endo_sum(const Mat& J1, const Mat& J2) const {
        const std::size_t N = A.R.nvars();
        Mat out = mat_zero(m1 + m2, m1 + m2, A.R);
        for (std::size_t a = 0; a < m1; ++a)
            for (std::size_t b = 0; b < m1; ++b) out[a][b] = promote_poly(J1[a][b], 0, N);
        for (std::size_t a = 0; a < m2; ++a)
            for (std::size_t b = 0; b < m2; ++b)
                out[m1 + a][m1 + b] = promote_poly(J2[a][b], n1, N);
        return out;
    }

    Skew tensor_sum(const Skew& S1, const Skew& S2) const {
        if (S1.deg != S2.deg) throw construction_error("tensor sum needs equal degrees");
        const std::size_t N = A.R.nvars();
        Skew out = promote_skew(S1, 0, N, 0);
        out += promote_skew(S2, n1, N, m1);
        return out;
    }
};

inline Product direct_product(const Algebroid& A1, const Algebroid& A2) {
    Product P;
    P.m1 = A1.m;
    P.m2 = A2.m;
    P.n1 = A1.n();
    P.n2 = A2.n();
    RingCtx R(A1.R.vars);
    for (auto& nm0 : A2.R.vars) {
        std::string nm = nm0;
        if (R.var_index(nm) >= 0) nm += "_2";
        if (R.var_index(nm) >= 0) throw construction_error("coordinate name collision: " + nm0);
        R.vars.push_back(nm);
    }
    const std::size_t N = R.nvars();
    for (auto& rel : A1.R.rels) R.rels.push_back({rel.var, promote_poly(rel.tail, 0, N)});
    for (auto& rel : A2.R.rels)
        R.rels.push_back({rel.var + P.n1, promote_poly(rel.tail, P.n1, N)});
    P.A.R = std::move(R);
    P.A.m = P.m1 + P.m2;
    P.A.anchor.assign(P.A.m, std::vector<Poly>(N, Poly{}));
    for (std::size_t a = 0; a < P.m1; ++a)
        for (std::size_t i = 0; i < P.n1; ++i)
            P.A.anchor[a][i] = promote_poly(A1.anchor[a][i], 0, N);
    for (std::size_t a = 0; a < P.m2; ++a)
        for (std::size_t i = 0; i < P.n2; ++i)
            P.A.anchor[P.m1 + a][P.n1 + i] = promote_poly(A2.anchor[a][i], P.n1, N);
    for (auto& [key, row] : A1.C) {
        Section r2(P.A.m, Poly{});
        for (std::size_t c = 0; c < P.m1; ++c) r2[c] = promote_poly(row[c], 0, N);
        P.A.C.emplace(key, std::move(r2));
    }
    for (auto& [key, row] : A2.C) {
        Section r2(P.A.m, Poly{});
        for (std::size_t c = 0; c < P.m2; ++c)
            r2[P.m1 + c] = promote_poly(row[c], P.n1, N);
        P.A.C.emplace(std::make_pair(key.first + static_cast<int>(P.m1),
                                     key.second + static_cast<int>(P.m1)),
                      std::move(r2));
    }
    return P;
}

// Fiberwise sum of two algebroids over one shared coordinate ring; this is the
// ambient object a graph lives in. Zero mixed brackets force the anchor images
// to commute, which the structure check below certifies.
struct SumSameBase {
    Algebroid A;
    std::size_t m1 = 0, m2 = 0;

    Mat endo_sum(const Mat& J1, const Mat& J2) const {
        Mat out = mat_zero(m1 + m2, m1 + m2, A.R);
        for (std::size_t a = 0; a < m1; ++a)
            for (std::size_t b = 0; b < m1; ++b) out[a][b] = J1[a][b];
        for (std::size_t a = 0; a < m2; ++a)
            for (std::size_t b = 0; b < m2; ++b) out[m1 + a][m1 + b] = J2[a][b];
        return out;
    }

    Skew tensor_sum(const Skew& S1, const Skew& S2) const {
        if (S1.deg != S2.deg) throw construction_error("tensor sum needs equal degrees");
        Skew out = S1;
        out += promote_skew(S2, 0, A.R.nvars(), m1);
        return out;
    }
};

inline SumSameBase direct_sum_same_base(const Algebroid& A1, const Algebroid& A2) {
    if (A1.R.vars != A2.R.vars)
        throw construction_error("summands must share the coordinate ring");
    if (A1.R.rels.size() != A2.R.rels.size())
        throw construction_error("summands must share the base relations");
    for (std::size_t k = 0; k < A1.R.rels.size(); ++k)
        if (A1.R.rels[k].var != A2.R.rels[k].var
            || !A1.R.eq(A1.R.rels[k].tail, A2.R.rels[k].tail))
            throw construction_error("summands must share the base relations");
    SumSameBase S;
    S.m1 = A1.m;
    S.m2 = A2.m;
    S.A.R = A1.R;
    S.A.m = S.m1 + S.m2;
    S.A.anchor = A1.anchor;
    for (auto& row : A2.anchor) S.A.anchor.push_back(row);
    for (auto& [key, row] : A1.C) {
        Section r2(S.A.m, Poly{});
        for (std::size_t c = 0; c < S.m1; ++c) r2[c] = row[c];
        S.A.C.emplace(key, std::move(r2));
    }
    for (auto& [key, row] : A2.C) {
        Section r2(S.A.m, Poly{});
        for (std::size_t c = 0; c < S.m2; ++c) r2[S.m1 + c] = row[c];
        S.A.C.emplace(std::make_pair(key.first + static_cast<int>(S.m1),
                                     key.second + static_cast<int>(S.m1)),
                      std::move(r2));
    }
    auto v = S.A.verify();
    if (!v.ok)
        throw construction_error("fiberwise sum is not a Lie algebroid: " + v.failures.front());
    return S;
}

// ---- subalgebroids and graphs ----

struct Subalgebroid {
    Mat frame;                                      // ambient rank x k, columns span the subbundle
    std::optional<std::vector<Skew>> annihilator;   // coframe cutting the span out
};

struct Graph {
    SumSameBase ambient;
    Subalgebroid sub;
    Morphism phi;
};

inline Graph graph(const Algebroid& A1, const Algebroid& A2, const Morphism& phi) {
    if (!check_morphism(A1, A2, phi).ok())
        throw construction_error("graph needs a Lie algebroid morphism");
    Graph G{direct_sum_same_base(A1, A2), {}, phi};
    const std::size_t m1 = A1.m, m2 = A2.m;
    const RingCtx& R = G.ambient.A.R;
    G.sub.frame = mat_zero(m1 + m2, m1, R);
    for (std::size_t a = 0; a < m1; ++a) G.sub.frame[a][a] = R.one();
    for (std::size_t b = 0; b < m2; ++b)
        for (std::size_t a = 0; a < m1; ++a) G.sub.frame[m1 + b][a] = phi.M[b][a];
    std::vector<Skew> ann;
    for (std::size_t b = 0; b < m2; ++b) {
        Skew w(1);
        for (std::size_t a = 0; a < m1; ++a)
            w.add_term(Idx{static_cast<unsigned char>(a)}, -phi.M[b][a]);
        w.add_term(Idx{static_cast<unsigned char>(m1 + b)}, R.one());
        ann.push_back(std::move(w));
    }
    G.sub.annihilator = std::move(ann);
    return G;
}

// frame sections stay inside the span under the bracket
inline bool subalgebroid_closed(const Algebroid& A, const Subalgebroid& sub) {
    if (!sub.annihilator)
        throw construction_error("closure test needs an annihilator coframe");
    const std::size_t k = sub.frame.empty() ? 0 : sub.frame[0].size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            Section br = A.bracket(mat_column(sub.frame, i), mat_column(sub.frame, j));
            for (auto& w : *sub.annihilator)
                if (!A.R.is_zero(covector_eval(A.R, w, br))) return false;
        }
    return true;
}

// ---- membership of a section in the column span of a frame ----

namespace detail {

inline Mat poly_minor(const Mat& B, std::size_t row, std::size_t col) {
    Mat M;
    for (std::size_t r = 0; r < B.size(); ++r) {
        if (r == row) continue;
        std::vector<Poly> line;
        for (std::size_t c = 0; c < B.size(); ++c)
            if (c != col) line.push_back(B[r][c]);
        M.push_back(std::move(line));
    }
    return M;
}

inline Poly poly_det(const RingCtx& R, const Mat& B) {
    const std::size_t n = B.size();
    if (n == 0) return R.one();
    if (n == 1) return B[0][0];
    Poly tot;
    for (std::size_t r = 0; r < n; ++r) {
        if (B[r][0].is_zero()) continue;
        Poly term = B[r][0] * poly_det(R, poly_minor(B, r, 0));
        tot += (r % 2 == 0) ? term : -term;
    }
    return R.reduce(tot);
}

inline Mat poly_adjugate(const RingCtx& R, const Mat& B) {
    const std::size_t n = B.size();
    Mat adj = mat_zero(n, n, R);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Poly c = poly_det(R, poly_minor(B, i, j));
            adj[j][i] = ((i + j) % 2 == 0) ? c : R.reduce(-c);
        }
    return adj;
}

inline std::vector<QI> eval_section(const RingCtx& R, const Section& s,
                                    const std::vector<QI>& pt) {
    std::vector<QI> out(s.size());
    for (std::size_t a = 0; a < s.size(); ++a) out[a] = R.eval(s[a], pt);
    return out;
}

inline bool qi_in_span(const QIMat& T, const std::vector<QI>& v) {
    QIMat aug = T;
    for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(v[r]);
    return qi_rank(T) == qi_rank(aug);
}

} // namespace detail

struct SpanDecision {
    bool member = false;
    const char* mode = "symbolic";   // "symbolic" is exact; "pointwise" certifies samples
};

inline SpanDecision in_column_span(const RingCtx& R, const Mat& T, const Section& v) {
    const std::size_t m = T.size();
    const std::size_t k = m ? T[0].size() : 0;
    if (k == 0) {
        for (auto& c : v)
            if (!R.is_zero(c)) return {false, "symbolic"};
        return {true, "symbolic"};
    }
    bool allconst = mat_is_constant(T);
    for (std::size_t a = 0; a < m && allconst; ++a)
        if (!R.reduce(v[a]).as_const()) allconst = false;
    if (allconst) {
        QIMat TQ(m, std::vector<QI>(k));
        std::vector<QI> vq(m);
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t c = 0; c < k; ++c) TQ[r][c] = *R.reduce(T[r][c]).as_const();
            vq[r] = *R.reduce(v[r]).as_const();
        }
        return {detail::qi_in_span(TQ, vq), "symbolic"};
    }
    // a row block with constant nonzero determinant forces the coefficients,
    // turning membership into an exact polynomial identity
    for (auto& rows : detail::all_subsets(m, k)) {
        Mat B(k, std::vector<Poly>(k));
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) B[r][c] = T[rows[r]][c];
        Poly det = detail::poly_det(R, B);
        auto dc = det.as_const();
        if (!dc || dc->is_zero()) continue;
        Mat adj = detail::poly_adjugate(R, B);
        Section coeff(k, Poly{});
        for (std::size_t a = 0; a < k; ++a) {
            Poly acc;
            for (std::size_t r = 0; r < k; ++r)
                if (!adj[a][r].is_zero()) acc += adj[a][r] * v[rows[r]];
            coeff[a] = R.reduce((QI(1) / *dc) * acc);
        }
        for (std::size_t r = 0; r < m; ++r) {
            Poly acc;
            for (std::size_t a = 0; a < k; ++a)
                if (!T[r][a].is_zero() && !coeff[a].is_zero()) acc += T[r][a] * coeff[a];
            if (!R.eq(acc, v[r])) return {false, "symbolic"};
        }
        return {true, "symbolic"};
    }
    if (!R.rels.empty())
        throw construction_error(
            "span membership needs a constant frame, a unimodular row block, or a relation-free "
            "ring");
    for (int j = 0; j < 25; ++j) {
        std::vector<QI> pt(R.nvars());
        for (std::size_t i = 0; i < R.nvars(); ++i)
            pt[i] = QI(mpq_class(static_cast<long>(j + 1 + (i + 1) * (2 * j + 3))));
        if (!detail::qi_in_span(mat_eval(R, T, pt), detail::eval_section(R, v, pt)))
            return {false, "pointwise"};
    }
    return {true, "pointwise"};
}

// ---- coisotropic and lagrangian subalgebroids ----

struct CoisotropyReport {
    bool j_invariant = false;
    bool coisotropic = false;
    const char* mode = "symbolic";
    int witness = -1;   // index of the covector that escapes (or breaks invariance)
};

inline CoisotropyReport is_coisotropic(const Algebroid& A, const Subalgebroid& sub, const Mat& J,
                                       const Skew& pi20) {
    if (!sub.annihilator)
        throw construction_error("coisotropy needs an annihilator coframe");
    if (pi20.deg != 2) throw construction_error("bisection of degree two expected");
    require_almost_complex(A, J);
    CoisotropyReport rep;
    const RingCtx& R = A.R;
    const auto& ann = *sub.annihilator;
    const std::size_t k = sub.frame.empty() ? 0 : sub.frame[0].size();
    for (std::size_t i = 0; i < k; ++i) {
        Section jf = apply_endo(R, J, mat_column(sub.frame, i));
        for (std::size_t w = 0; w < ann.size(); ++w)
            if (!R.is_zero(covector_eval(R, ann[w], jf))) {
                rep.witness = static_cast<int>(w);
                return rep;
            }
    }
    rep.j_invariant = true;
    if (ann.empty()) {
        rep.coisotropic = true;
        rep.mode = "trivial";
        return rep;
    }
    Mat P10 = eigenprojector(R, J, true);
    Mat Q10 = eigenprojector(R, mat_transpose(J), true);
    Mat P = skew_to_matrix(R, pi20, A.m);
    Mat T = mat_mul(R, P10, sub.frame);
    bool pointwise = false;
    for (std::size_t w = 0; w < ann.size(); ++w) {
        Section alpha = apply_endo(R, Q10, to_section(ann[w], A.m));
        Section v = sharp(R, P, alpha);
        SpanDecision d = in_column_span(R, T, v);
        if (std::strcmp(d.mode, "pointwise") == 0) pointwise = true;
        if (!d.member) {
            rep.witness = static_cast<int>(w);
            rep.mode = d.mode;
            return rep;
        }
    }
    rep.coisotropic = true;
    rep.mode = pointwise ? "pointwise" : "symbolic";
    return rep;
}

struct LagrangianReport {
    CoisotropyReport cois;
    bool lagrangian = false;
    const char* mode = "symbolic";
};

// the sharp image of the annihilator must exhaust everything the span shares
// with the sharp image of the full coframe
inline LagrangianReport is_lagrangian(const Algebroid& A, const Subalgebroid& sub, const Mat& J,
                                      const Skew& pi20) {
    LagrangianReport rep;
    rep.cois = is_coisotropic(A, sub, J, pi20);
    if (!rep.cois.coisotropic) return rep;
    const RingCtx& R = A.R;
    const auto& ann = *sub.annihilator;
    Mat P10 = eigenprojector(R, J, true);
    Mat Q10 = eigenprojector(R, mat_transpose(J), true);
    Mat P = skew_to_matrix(R, pi20, A.m);
    Mat T = mat_mul(R, P10, sub.frame);
    Mat W = mat_mul(R, P, Q10);
    Mat L = mat_zero(A.m, ann.size(), R);
    for (std::size_t w = 0; w < ann.size(); ++w) {
        Section v = sharp(R, P, apply_endo(R, Q10, to_section(ann[w], A.m)));
        for (std::size_t a = 0; a < A.m; ++a) L[a][w] = v[a];
    }
    Mat TW = T;
    for (std::size_t r = 0; r < A.m; ++r)
        for (auto& c : W[r]) TW[r].push_back(c);
    bool allconst = mat_is_constant(L) && mat_is_constant(T) && mat_is_constant(W);
    if (allconst) {
        std::size_t rl = qi_rank(mat_to_qi(R, L));
        std::size_t inter = qi_rank(mat_to_qi(R, T)) + qi_rank(mat_to_qi(R, W))
                            - qi_rank(mat_to_qi(R, TW));
        rep.lagrangian = (rl == inter);
        rep.mode = "symbolic";
        return rep;
    }
    if (!R.rels.empty())
        throw construction_error("lagrangian test needs constant data or a relation-free ring");
    rep.lagrangian = true;
    for (int j = 0; j < 25 && rep.lagrangian; ++j) {
        std::vector<QI> pt(R.nvars());
        for (std::size_t i = 0; i < R.nvars(); ++i)
            pt[i] = QI(mpq_class(static_cast<long>(j + 1 + (i + 1) * (2 * j + 3))));
        std::size_t rl = qi_rank(mat_eval(R, L, pt));
        std::size_t inter = qi_rank(mat_eval(R, T, pt))
                            + qi_rank(mat_eval(R, W, pt))
                            - qi_rank(mat_eval(R, TW, pt));
        if (rl != inter) rep.lagrangian = false;
    }
    rep.mode = "pointwise";
    return rep;
}

// ---- morphisms preserving the poisson data ----

struct AcpMorphismReport {
    bool la_morphism = false;
    bool ac_morphism = false;
    bool poisson_related = false;
    bool acp() const { return la_morphism && ac_morphism && poisson_related; }
};

inline AcpMorphismReport is_acp_morphism(const Algebroid& A1, const Algebroid& A2,
                                         const Morphism& phi, const Mat& J1, const Skew& pi1,
                                         const Mat& J2, const Skew& pi2) {
    AcpMorphismReport rep;
    rep.la_morphism = check_morphism(A1, A2, phi).ok();
    rep.ac_morphism = check_ac_morphism(A1, phi, J1, J2);
    const RingCtx& R = A1.R;
    Mat P1 = skew_to_matrix(R, pi1, A1.m);
    Mat P2 = skew_to_matrix(R, pi2, A2.m);
    // relatedness, once on coframe pairs ...
    bool rel_eval = true;
    for (std::size_t b = 0; b < A2.m && rel_eval; ++b)
        for (std::size_t c = b + 1; c < A2.m && rel_eval; ++c) {
            Section pb(A1.m, Poly{}), pc(A1.m, Poly{});
            for (std::size_t a = 0; a < A1.m; ++a) {
                pb[a] = phi.M[b][a];
                pc[a] = phi.M[c][a];
            }
            if (!R.eq(bis_eval(R, P1, pb, pc), P2[b][c])) rel_eval = false;
        }
    // ... and once as a matrix identity for the sharp maps
    Mat push = mat_mul(R, mat_mul(R, phi.M, P1), mat_transpose(phi.M));
    bool rel_mat = mat_eq(R, P2, push);
    if (rel_eval != rel_mat)
        throw std::logic_error("poisson relatedness criteria disagree");
    rep.poisson_related = rel_eval;
    return rep;
}

// A morphism preserves the poisson data exactly when its graph sits
// coisotropically inside the sum carrying the difference bisection.
struct GraphTheoremReport {
    AcpMorphismReport morphism;
    CoisotropyReport coisotropy;
    bool agree = false;
};

inline GraphTheoremReport graph_theorem_check(const Algebroid& A1, const Algebroid& A2,
                                              const Morphism& phi, const Mat& J1, const Skew& pi1,
                                              const Mat& J2, const Skew& pi2) {
    GraphTheoremReport rep;
    rep.morphism = is_acp_morphism(A1, A2, phi, J1, pi1, J2, pi2);
    Graph G = graph(A1, A2, phi);
    Mat J = G.ambient.endo_sum(J1, J2);
    Skew pi = G.ambient.tensor_sum(pi1, -pi2);
    rep.coisotropy = is_coisotropic(G.ambient.A, G.sub, J, pi);
    rep.agree = (rep.morphism.acp() == rep.coisotropy.coisotropic);
    return rep;
}

} // namespace lax
