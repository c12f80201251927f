#pragma once

#include <map>
#include <utility>

#include "algebroid.hpp"

namespace lax {

struct poisson_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// endomorphism action on a section, (Ms)^a = M^a_b s^b
inline Section apply_endo(const RingCtx& R, const Mat& M, const Section& s) {
    std::size_t m = M.size();
    Section out(m, Poly{});
    for (std::size_t a = 0; a < m; ++a) {
        Poly v;
        for (std::size_t b = 0; b < m; ++b)
            if (!M[a][b].is_zero() && !s[b].is_zero()) v += M[a][b] * s[b];
        out[a] = R.reduce(v);
    }
    return out;
}

// dual action of an endomorphism on covector coefficients.  Two realizations are
// in use: the same matrix acting on the coefficient column, and the transpose.
inline Section dual_same(const RingCtx& R, const Mat& M, const Section& w) {
    return apply_endo(R, M, w);
}

inline Section dual_transpose(const RingCtx& R, const Mat& M, const Section& w) {
    std::size_t m = M.size();
    Section out(m, Poly{});
    for (std::size_t a = 0; a < m; ++a) {
        Poly v;
        for (std::size_t b = 0; b < m; ++b)
            if (!M[b][a].is_zero() && !w[b].is_zero()) v += M[b][a] * w[b];
        out[a] = R.reduce(v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Schouten bracket on multivectors.
//
// Computed per decomposable term with the function coefficient riding the first
// wedge slot: a term f e_{i0} ^ e_{i1} ^ ... is read as (f e_{i0}) ^ e_{i1} ^ ...,
// and
//   [s_1^..^s_p, t_1^..^t_q] = (-1)^{p+1} sum_{i,j} (-1)^{i+j}
//                              [s_i,t_j] ^ s-rest ^ t-rest.
// A factor of degree 0 pairs with a p-term by
//   [f e_I, g] = [g, f e_I] = sum_j (-1)^j f rho_{I_j}(g) e_{I \ j},
// the unique extension with [s, g] = rho(s)g that keeps the section-function
// calculus of the Poisson bracket consistent.
// ---------------------------------------------------------------------------
inline Skew sn_bracket(const Algebroid& A, const Skew& S, const Skew& T) {
    const RingCtx& R = A.R;
    int outdeg = S.deg + T.deg - 1;
    if (outdeg < 0) outdeg = 0;
    Skew out(outdeg);
    for (auto& [Ii, f] : S.terms) {
        std::size_t p = Ii.size();
        for (auto& [Jj, g] : T.terms) {
            std::size_t q = Jj.size();
            if (p == 0 && q == 0) continue;
            if (q == 0) {  // function on the right
                for (std::size_t j = 0; j < p; ++j) {
                    Poly v = f * A.rho_frame(Ii[j], g);
                    if (v.is_zero()) continue;
                    Idx rest;
                    for (std::size_t k = 0; k < p; ++k)
                        if (k != j) rest.push_back(Ii[k]);
                    out.add_term(std::move(rest), (j % 2 == 0) ? v : -v);
                }
                continue;
            }
            if (p == 0) {  // function on the left
                for (std::size_t j = 0; j < q; ++j) {
                    Poly v = g * A.rho_frame(Jj[j], f);
                    if (v.is_zero()) continue;
                    Idx rest;
                    for (std::size_t k = 0; k < q; ++k)
                        if (k != j) rest.push_back(Jj[k]);
                    out.add_term(std::move(rest), (j % 2 == 0) ? v : -v);
                }
                continue;
            }
            bool pref = (p + 1) % 2 == 0;  // true: +1
            for (std::size_t i = 0; i < p; ++i)
                for (std::size_t j = 0; j < q; ++j) {
                    bool plus = pref == ((i + j) % 2 == 0);
                    // the bracket [sv e_{Ii[i]}, tv e_{Jj[j]}], leftover
                    // coefficients multiply the whole term
                    const Poly& sv = (i == 0) ? f : R.one();
                    const Poly& tv = (j == 0) ? g : R.one();
                    Poly mult = R.one();
                    if (i != 0) mult = mult * f;
                    if (j != 0) mult = mult * g;
                    int a = Ii[i], b = Jj[j];
                    Section br = A.frame_bracket(a, b);
                    for (auto& c : br) c = c * (sv * tv);
                    br[b] = br[b] + sv * A.rho_frame(a, tv);
                    br[a] = br[a] - tv * A.rho_frame(b, sv);
                    Idx rest;
                    for (std::size_t k = 0; k < p; ++k)
                        if (k != i) rest.push_back(Ii[k]);
                    for (std::size_t k = 0; k < q; ++k)
                        if (k != j) rest.push_back(Jj[k]);
                    for (std::size_t c = 0; c < A.m; ++c) {
                        if (br[c].is_zero()) continue;
                        Poly v = mult * br[c];
                        Idx full{static_cast<unsigned char>(c)};
                        full.insert(full.end(), rest.begin(), rest.end());
                        out.add_term(std::move(full), plus ? v : -v);
                    }
                }
        }
    }
    out.reduce(R);
    return out;
}

// ---------------------------------------------------------------------------
// Nijenhuis torsion of an almost complex endomorphism,
//   N_J(s,t) = [Js,Jt] - J[s,Jt] - J[Js,t] - [s,t].
// Components on frame pairs a < b; only nonzero ones are kept.
// ---------------------------------------------------------------------------
inline std::map<std::pair<int, int>, Section> nijenhuis(const Algebroid& A, const Mat& J) {
    const RingCtx& R = A.R;
    std::map<std::pair<int, int>, Section> out;
    for (std::size_t a = 0; a < A.m; ++a)
        for (std::size_t b = a + 1; b < A.m; ++b) {
            Section ja = apply_endo(R, J, A.unit(a));
            Section jb = apply_endo(R, J, A.unit(b));
            Section n = A.bracket(ja, jb);
            Section t1 = apply_endo(R, J, A.bracket(A.unit(a), jb));
            Section t2 = apply_endo(R, J, A.bracket(ja, A.unit(b)));
            Section t3 = A.frame_bracket(a, b);
            bool nz = false;
            for (std::size_t c = 0; c < A.m; ++c) {
                n[c] = R.reduce(n[c] - t1[c] - t2[c] - t3[c]);
                nz = nz || !n[c].is_zero();
            }
            if (nz) out[{(int)a, (int)b}] = std::move(n);
        }
    return out;
}

inline bool nijenhuis_is_zero(const Algebroid& A, const Mat& J) {
    return nijenhuis(A, J).empty();
}

// ---------------------------------------------------------------------------
// cyclic coordinate expression of [pi,pi] = 0:
//   sum_{cyc(a,e,d)} ( pi^{ab} rho_b^i d_i pi^{ed} + pi^{ab} pi^{cd} C^e_{bc} )
// ---------------------------------------------------------------------------
inline Poly i5_component(const Algebroid& A, const Mat& P, int a, int e, int d) {
    const RingCtx& R = A.R;
    std::size_t n = R.nvars();
    auto term = [&](int a, int e, int d) {
        Poly t;
        for (std::size_t b = 0; b < A.m; ++b) {
            if (P[a][b].is_zero()) continue;
            for (std::size_t i = 0; i < n; ++i) {
                if (A.anchor[b][i].is_zero()) continue;
                Poly dp = R.diff(P[e][d], i);
                if (!dp.is_zero()) t += P[a][b] * A.anchor[b][i] * dp;
            }
            for (std::size_t c = 0; c < A.m; ++c) {
                Poly k = A.Cc((int)b, (int)c, e);
                if (!k.is_zero() && !P[c][d].is_zero()) t += P[a][b] * P[c][d] * k;
            }
        }
        return t;
    };
    return R.reduce(term(a, e, d) + term(e, d, a) + term(d, a, e));
}

struct PoissonVerdict {
    bool poisson = false;
    Skew residual{3};
};

// decides [pi,pi] = 0; the Schouten residual is cross-checked component-wise
// against the cyclic expression (their ratio is the fixed constant -2)
inline PoissonVerdict is_poisson(const Algebroid& A, const Skew& pi) {
    const RingCtx& R = A.R;
    PoissonVerdict v;
    v.residual = sn_bracket(A, pi, pi);
    Mat P = skew_to_matrix(R, pi, A.m);
    for (std::size_t a = 0; a < A.m; ++a)
        for (std::size_t e = a + 1; e < A.m; ++e)
            for (std::size_t d = e + 1; d < A.m; ++d) {
                Poly lhs = v.residual.coeff(Idx{(unsigned char)a, (unsigned char)e, (unsigned char)d});
                Poly rhs = i5_component(A, P, (int)a, (int)e, (int)d) * R.constant(-2);
                if (!R.eq(lhs, rhs))
                    throw std::logic_error("Schouten residual disagrees with the cyclic expression");
            }
    v.poisson = v.residual.is_zero(R);
    return v;
}

// {f,g} = pi(d_E f, d_E g)
inline Poly poisson_bracket(const Algebroid& A, const Skew& pi, const Poly& f, const Poly& g) {
    const RingCtx& R = A.R;
    Mat P = skew_to_matrix(R, pi, A.m);
    return bis_eval(R, P, A.d_fun_section(f), A.d_fun_section(g));
}

// pi# as matrix action on a covector, (pi# w)^a = pi^{ab} w_b
inline Section sharp_pi(const Algebroid& A, const Skew& pi, const Section& w) {
    return sharp(A.R, skew_to_matrix(A.R, pi, A.m), w);
}

// ---------------------------------------------------------------------------
// bracket of 1-forms attached to a (not necessarily skew) bisection matrix F:
//   [w,t]_F = L_{F#w} t - L_{F#t} w - d_E <F#w, t> .
// The scalar term pairs the first sharp against the second argument; this is
// what makes [w, f t]_F = f [w,t]_F + (rho(F#w) f) t come out clean.
// ---------------------------------------------------------------------------
inline Section general_bracket(const Algebroid& A, const Mat& F, const Section& w,
                               const Section& t) {
    const RingCtx& R = A.R;
    Section fw = sharp(R, F, w);
    Section ft = sharp(R, F, t);
    Skew l1 = A.lie_form(fw, from_section(t));
    Skew l2 = A.lie_form(ft, from_section(w));
    Section dp = A.d_fun_section(bis_eval(R, F, t, w));
    Section out(A.m, Poly{});
    for (std::size_t a = 0; a < A.m; ++a) {
        Idx ia{(unsigned char)a};
        out[a] = R.reduce(l1.coeff(ia) - l2.coeff(ia) - dp[a]);
    }
    return out;
}

inline Section form_bracket(const Algebroid& A, const Skew& pi, const Section& w,
                            const Section& t) {
    return general_bracket(A, skew_to_matrix(A.R, pi, A.m), w, t);
}

// anchor of the dual structure, row a = rho(pi# e^a)
inline Mat rho_tilde(const Algebroid& A, const Mat& P) {
    const RingCtx& R = A.R;
    std::size_t n = R.nvars();
    Mat out = mat_zero(A.m, n, R);
    for (std::size_t a = 0; a < A.m; ++a)
        for (std::size_t i = 0; i < n; ++i) {
            Poly v;
            for (std::size_t c = 0; c < A.m; ++c)
                if (!P[c][a].is_zero() && !A.anchor[c][i].is_zero())
                    v += P[c][a] * A.anchor[c][i];
            out[a][i] = R.reduce(v);
        }
    return out;
}

// the dual algebroid (E*, [.,.]_pi, rho о pi#) carried by the coframe;
// only defined when pi is Poisson
inline Algebroid dual_algebroid(const Algebroid& A, const Skew& pi) {
    PoissonVerdict v = is_poisson(A, pi);
    if (!v.poisson)
        throw poisson_error("dual structure requires a Poisson bisection; [pi,pi] = " +
                            skew_str(A.R, v.residual));
    const RingCtx& R = A.R;
    Algebroid D;
    D.R = R;
    D.m = A.m;
    D.anchor = rho_tilde(A, skew_to_matrix(R, pi, A.m));
    for (std::size_t a = 0; a < A.m; ++a)
        for (std::size_t b = a + 1; b < A.m; ++b) {
            Section br = form_bracket(A, pi, unit_covector(R, A.m, a), unit_covector(R, A.m, b));
            for (std::size_t c = 0; c < A.m; ++c)
                if (!br[c].is_zero()) D.set_structure((int)a, (int)b, (int)c, br[c]);
        }
    return D;
}

inline Skew lichnerowicz_d(const Algebroid& A, const Skew& pi, const Skew& w) {
    return dual_algebroid(A, pi).d(w);
}

// ---------------------------------------------------------------------------
// deformation of [.,.]_F by an endomorphism G,
//   [w,t]_F^G = [G*w, t]_F + [w, G*t]_F - G*[w,t]_F .
// The public reading takes G* as the same matrix on coefficient columns, the
// realization that reproduces the worked odd-sphere deformed families; the
// transpose reading is kept for the concomitant.
// ---------------------------------------------------------------------------
enum class DualAction { same_matrix, transpose };

inline Section deformed_bracket(const Algebroid& A, const Mat& F, const Mat& G,
                                const Section& w, const Section& t,
                                DualAction dual = DualAction::same_matrix) {
    const RingCtx& R = A.R;
    auto Gs = [&](const Section& v) {
        return dual == DualAction::same_matrix ? dual_same(R, G, v) : dual_transpose(R, G, v);
    };
    Section r1 = general_bracket(A, F, Gs(w), t);
    Section r2 = general_bracket(A, F, w, Gs(t));
    Section r3 = Gs(general_bracket(A, F, w, t));
    Section out(A.m, Poly{});
    for (std::size_t a = 0; a < A.m; ++a) out[a] = R.reduce(r1[a] + r2[a] - r3[a]);
    return out;
}

// concomitant C(F,G)(w,t) = [w,t]_{FG} - [w,t]_F^{G*}; the composite bisection
// acts by the matrix product, (FG)# = F# o G#, and the deformation inside C
// uses the transpose dual
inline Section concomitant(const Algebroid& A, const Mat& F, const Mat& G,
                           const Section& w, const Section& t) {
    const RingCtx& R = A.R;
    Mat FG = mat_mul(R, F, G);
    Section r1 = general_bracket(A, FG, w, t);
    Section r2 = deformed_bracket(A, F, G, w, t, DualAction::transpose);
    Section out(A.m, Poly{});
    for (std::size_t a = 0; a < A.m; ++a) out[a] = R.reduce(r1[a] - r2[a]);
    return out;
}

struct CompatVerdict {
    bool compatible = false;
    bool sharp_intertwines = false;  // G o F# = F# o G*
    bool concomitant_zero = false;
    std::map<std::pair<int, int>, Section> defects;  // nonzero C(F,G) coframe values
};

// Poisson-Nijenhuis compatibility of a Poisson bisection F with an
// endomorphism G of vanishing torsion
inline CompatVerdict is_compatible(const Algebroid& A, const Mat& F, const Mat& G) {
    const RingCtx& R = A.R;
    Skew piF = matrix_to_skew(R, F);
    if (!mat_eq(R, F, mat_scale(QI(-1), mat_transpose(F))))
        throw poisson_error("compatibility requires a skew bisection matrix");
    if (!is_poisson(A, piF).poisson)
        throw poisson_error("compatibility requires a Poisson bisection");
    if (!nijenhuis_is_zero(A, G))
        throw poisson_error("compatibility requires an endomorphism with vanishing torsion");
    CompatVerdict v;
    v.sharp_intertwines = mat_eq(R, mat_mul(R, G, F), mat_mul(R, F, G));
    v.concomitant_zero = true;
    for (std::size_t a = 0; a < A.m; ++a)
        for (std::size_t b = a + 1; b < A.m; ++b) {
            Section c = concomitant(A, F, G, unit_covector(R, A.m, a), unit_covector(R, A.m, b));
            bool nz = false;
            for (auto& p : c) nz = nz || !p.is_zero();
            if (nz) {
                v.concomitant_zero = false;
                v.defects[{(int)a, (int)b}] = std::move(c);
            }
        }
    v.compatible = v.sharp_intertwines && v.concomitant_zero;
    return v;
}

struct PNVerdict {
    bool skew = false;
    bool poisson = false;
    bool torsion_free = false;
    bool sharp_intertwines = false;
    bool concomitant_zero = false;
    std::map<std::pair<int, int>, Section> defects;  // nonzero concomitant coframe values
    bool holds() const {
        return skew && poisson && torsion_free && sharp_intertwines && concomitant_zero;
    }
};

// full Poisson-Nijenhuis verdict for a bisection matrix F and an endomorphism
// G.  Unlike is_compatible this never throws on a mathematical failure: it
// records which requirement broke and still evaluates the concomitant, so a
// non-Poisson bisection comes back with its defect family attached.
inline PNVerdict is_poisson_nijenhuis(const Algebroid& A, const Mat& F, const Mat& G) {
    const RingCtx& R = A.R;
    PNVerdict v;
    v.skew = mat_eq(R, F, mat_scale(QI(-1), mat_transpose(F)));
    if (!v.skew) return v;
    v.poisson = is_poisson(A, matrix_to_skew(R, F)).poisson;
    v.torsion_free = nijenhuis_is_zero(A, G);
    v.sharp_intertwines = mat_eq(R, mat_mul(R, G, F), mat_mul(R, F, G));
    v.concomitant_zero = true;
    for (std::size_t a = 0; a < A.m; ++a)
        for (std::size_t b = a + 1; b < A.m; ++b) {
            Section c = concomitant(A, F, G, unit_covector(R, A.m, a), unit_covector(R, A.m, b));
            bool nz = false;
            for (auto& p : c) nz = nz || !p.is_zero();
            if (nz) {
                v.concomitant_zero = false;
                v.defects[{(int)a, (int)b}] = std::move(c);
            }
        }
    return v;
}

// ranks of the induced base bivector w^{ij} = rho_a^i pi^{ab} rho_b^j at
// sample points of the base
inline std::vector<std::size_t> distribution_rank(const Algebroid& A, const Mat& P,
                                                  const std::vector<std::vector<QI>>& points) {
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
    std::vector<std::size_t> out;
    for (auto& pt : points) {
        R.check_point(pt);
        out.push_back(qi_rank(mat_eval(R, W, pt)));
    }
    return out;
}

}  // namespace lax
