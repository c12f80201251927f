#pragma once

#include "poisson.hpp"

#include <map>
#include <utility>

namespace lax {

struct complex_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// J^2 = -id as an exact matrix identity
inline void require_almost_complex(const Algebroid& A, const Mat& J) {
    if (A.m % 2 != 0) throw complex_error("almost complex structures need even rank");
    const RingCtx& R = A.R;
    Mat sq = mat_mul(R, J, J);
    for (std::size_t a = 0; a < A.m; ++a)
        for (std::size_t b = 0; b < A.m; ++b) {
            Poly want = (a == b) ? R.constant(-1) : Poly{};
            if (!R.eq(sq[a][b], want))
                throw complex_error("square is not minus the identity at entry (" +
                                    std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
        }
}

inline Section mat_column(const Mat& M, std::size_t b) {
    Section s(M.size(), Poly{});
    for (std::size_t c = 0; c < M.size(); ++c) s[c] = M[c][b];
    return s;
}

// apply a linear map to every slot of a skew tensor; column b of M is the
// image of the b-th frame (or coframe) unit
inline Skew slotwise(const RingCtx& R, const Mat& M, const Skew& S) {
    if (S.deg == 0) {
        Skew out = S;
        out.reduce(R);
        return out;
    }
    Skew out(S.deg);
    for (auto& [idx, f] : S.terms) {
        Skew w(0);
        w.add_term({}, f);
        for (auto b : idx) w = wedge(w, from_section(mat_column(M, b)));
        out += w;
    }
    out.reduce(R);
    return out;
}

// eigenprojectors of J: plus picks the +i eigenspace, minus the -i one
inline Mat eigenprojector(const RingCtx& R, const Mat& J, bool plus) {
    std::size_t m = J.size();
    QI half(mpq_class(1, 2));
    QI ih(mpq_class(0), plus ? mpq_class(-1, 2) : mpq_class(1, 2));
    Mat out = mat_add(mat_scale(half, mat_identity(m, R)), mat_scale(ih, J));
    for (auto& row : out)
        for (auto& e : row) e = R.reduce(e);
    return out;
}

using Bigrade = std::map<std::pair<int, int>, Skew>;

inline Bigrade bigrade_with(const RingCtx& R, const Mat& P10, const Mat& P01, const Skew& S) {
    Bigrade table;
    int d = S.deg;
    if (d == 0) {
        Skew c = S;
        c.reduce(R);
        if (!c.is_zero(R)) table[{0, 0}] = c;
        return table;
    }
    std::size_t m = P10.size();
    std::vector<Skew> c10(m), c01(m);
    for (std::size_t b = 0; b < m; ++b) {
        c10[b] = from_section(mat_column(P10, b));
        c01[b] = from_section(mat_column(P01, b));
    }
    for (auto& [idx, f] : S.terms)
        for (unsigned mask = 0; mask < (1u << d); ++mask) {
            Skew w(0);
            w.add_term({}, f);
            int p = 0;
            for (int k = 0; k < d; ++k) {
                bool ten = ((mask >> k) & 1u) == 0;
                w = wedge(w, ten ? c10[idx[k]] : c01[idx[k]]);
                p += ten ? 1 : 0;
            }
            auto it = table.find({p, d - p});
            if (it == table.end())
                table[{p, d - p}] = w;
            else
                it->second += w;
        }
    for (auto it = table.begin(); it != table.end();) {
        it->second.reduce(R);
        if (it->second.is_zero(R))
            it = table.erase(it);
        else
            ++it;
    }
    return table;
}

// multivector slots transform with J itself
inline Bigrade bigrade_multivector(const Algebroid& A, const Mat& J, const Skew& S) {
    return bigrade_with(A.R, eigenprojector(A.R, J, true), eigenprojector(A.R, J, false), S);
}

// form slots transform with the transpose
inline Bigrade bigrade_form(const Algebroid& A, const Mat& J, const Skew& S) {
    Mat Jt = mat_transpose(J);
    return bigrade_with(A.R, eigenprojector(A.R, Jt, true), eigenprojector(A.R, Jt, false), S);
}

// the single bidegree of a pure tensor; (-1,-1) for the zero tensor
inline std::pair<int, int> pure_type(const Bigrade& table) {
    std::pair<int, int> found{-1, -1};
    for (auto& [pq, part] : table) {
        if (found.first >= 0) throw complex_error("tensor is not of a single bidegree");
        found = pq;
    }
    return found;
}

inline Skew bigrade_part(const Bigrade& table, int p, int q, int deg) {
    auto it = table.find({p, q});
    return it == table.end() ? Skew(deg) : it->second;
}

// ---------------------------------------------------------------------------
// almost complex Poisson bisections
// ---------------------------------------------------------------------------

struct AcpVerdict {
    bool acp = false;
    Skew self_residual{3};   // [pi20, pi20]
    Skew mixed_residual{3};  // [pi20, conj pi20]
};

inline AcpVerdict is_acp(const Algebroid& A, const Mat& J, const Skew& pi20) {
    if (pi20.deg != 2) throw complex_error("bisection of degree 2 expected");
    auto pt = pure_type(bigrade_multivector(A, J, pi20));
    if (pt.first >= 0 && pt != std::pair<int, int>{2, 0})
        throw complex_error("bisection is not of type (2,0)");
    AcpVerdict v;
    v.self_residual = sn_bracket(A, pi20, pi20);
    v.mixed_residual = sn_bracket(A, pi20, pi20.conj());
    v.acp = v.self_residual.is_zero(A.R) && v.mixed_residual.is_zero(A.R);
    return v;
}

// {f,g} = <pi20, d_E f ^ d_E g>
inline Poly acp_function_bracket(const Algebroid& A, const Skew& pi20, const Poly& f,
                                 const Poly& g) {
    const RingCtx& R = A.R;
    Mat P = skew_to_matrix(R, pi20, A.m);
    return bis_eval(R, P, A.d_fun_section(f), A.d_fun_section(g));
}

// the two real bisections carried by a (2,0) one
inline std::pair<Skew, Skew> real_parts(const RingCtx& R, const Skew& pi20) {
    Skew bar = pi20.conj();
    Skew first = pi20 + bar;
    Skew second = QI(mpq_class(0), mpq_class(1)) * (pi20 - bar);
    first.reduce(R);
    second.reduce(R);
    return {first, second};
}

// ---------------------------------------------------------------------------
// the Grassmann extension of the sharp map and its inverse
// ---------------------------------------------------------------------------

inline Skew ie_map(const Algebroid& A, const Skew& pi, const Skew& form) {
    return slotwise(A.R, skew_to_matrix(A.R, pi, A.m), form);
}

inline Skew ie_inverse(const Algebroid& A, const Skew& pi, const Skew& multi) {
    const RingCtx& R = A.R;
    Mat P = skew_to_matrix(R, pi, A.m);
    if (!mat_is_constant(P)) throw complex_error("slot inversion needs constant coefficients");
    QIMat inv;
    if (!qi_invert(mat_to_qi(R, P), inv)) throw complex_error("degenerate bisection");
    return slotwise(R, mat_from_qi(R, inv), multi);
}

// ---------------------------------------------------------------------------
// the coboundary family attached to a (2,0) bisection
// ---------------------------------------------------------------------------

inline Skew sigma_total(const Algebroid& A, const Skew& pi20, const Skew& S) {
    Skew pi = pi20 + pi20.conj();
    return QI(-1) * sn_bracket(A, S, pi);
}

inline Skew sigma1(const Algebroid& A, const Skew& pi20, const Skew& S) {
    return QI(-1) * sn_bracket(A, S, pi20);
}

inline Skew sigma2(const Algebroid& A, const Skew& pi20, const Skew& S) {
    return QI(-1) * sn_bracket(A, S, pi20.conj());
}

inline Bigrade sigma1_parts(const Algebroid& A, const Mat& J, const Skew& pi20, const Skew& S) {
    return bigrade_multivector(A, J, sigma1(A, pi20, S));
}

// the component raising the first grading index by one; input must be pure
inline Skew sigma11(const Algebroid& A, const Mat& J, const Skew& pi20, const Skew& S) {
    auto pt = pure_type(bigrade_multivector(A, J, S));
    if (pt.first < 0) return Skew(S.deg + 1);
    return bigrade_part(sigma1_parts(A, J, pi20, S), pt.first + 1, pt.second, S.deg + 1);
}

inline Skew sigma12(const Algebroid& A, const Mat& J, const Skew& pi20, const Skew& S) {
    auto pt = pure_type(bigrade_multivector(A, J, S));
    if (pt.first < 0) return Skew(S.deg + 1);
    return bigrade_part(sigma1_parts(A, J, pi20, S), pt.first + 2, pt.second - 1, S.deg + 1);
}

// ---------------------------------------------------------------------------
// the four-way splitting of d_E on a pure form
// ---------------------------------------------------------------------------

struct FormDerivatives {
    Skew up2{0};    // (p+2, q-1)
    Skew hol{0};    // (p+1, q)
    Skew anti{0};   // (p, q+1)
    Skew down2{0};  // (p-1, q+2)
};

inline FormDerivatives de_components(const Algebroid& A, const Mat& J, const Skew& w) {
    auto pt = pure_type(bigrade_form(A, J, w));
    int p = pt.first < 0 ? w.deg : pt.first;
    int q = pt.first < 0 ? 0 : pt.second;
    Skew dw = A.d(w);
    Bigrade table = bigrade_form(A, J, dw);
    for (auto& [pq, part] : table) {
        bool allowed = (pq == std::pair<int, int>{p + 2, q - 1}) ||
                       (pq == std::pair<int, int>{p + 1, q}) ||
                       (pq == std::pair<int, int>{p, q + 1}) ||
                       (pq == std::pair<int, int>{p - 1, q + 2});
        if (!allowed)
            throw std::logic_error("exterior derivative left the expected bidegrees");
    }
    FormDerivatives out;
    out.up2 = bigrade_part(table, p + 2, q - 1, w.deg + 1);
    out.hol = bigrade_part(table, p + 1, q, w.deg + 1);
    out.anti = bigrade_part(table, p, q + 1, w.deg + 1);
    out.down2 = bigrade_part(table, p - 1, q + 2, w.deg + 1);
    return out;
}

// ---------------------------------------------------------------------------
// integrability, five ways
// ---------------------------------------------------------------------------

struct IntegrabilityReport {
    bool closure10 = false;   // brackets of (1,0) frame projections stay (1,0)
    bool closure01 = false;
    bool forms_deg1 = false;  // d of pure coframe covectors avoids the far bidegree
    bool forms_low = false;   // same on pure wedges of two of them
    bool torsion_free = false;
    bool integrable = false;
};

inline IntegrabilityReport integrability_report(const Algebroid& A, const Mat& J) {
    require_almost_complex(A, J);
    const RingCtx& R = A.R;
    IntegrabilityReport rep;

    Mat P10 = eigenprojector(R, J, true), P01 = eigenprojector(R, J, false);
    auto section_zero = [&](const Section& s) {
        for (auto& c : s)
            if (!R.is_zero(c)) return false;
        return true;
    };
    rep.closure10 = rep.closure01 = true;
    for (std::size_t a = 0; a < A.m; ++a)
        for (std::size_t b = a + 1; b < A.m; ++b) {
            Section br10 = A.bracket(mat_column(P10, a), mat_column(P10, b));
            if (!section_zero(apply_endo(R, P01, br10))) rep.closure10 = false;
            Section br01 = A.bracket(mat_column(P01, a), mat_column(P01, b));
            if (!section_zero(apply_endo(R, P10, br01))) rep.closure01 = false;
        }

    Mat Jt = mat_transpose(J);
    Mat Q10 = eigenprojector(R, Jt, true), Q01 = eigenprojector(R, Jt, false);
    auto parts_within = [&](const Skew& w, int p, int q) {
        Bigrade t = bigrade_form(A, J, A.d(w));
        for (auto& [pq, part] : t)
            if (pq != std::pair<int, int>{p + 1, q} && pq != std::pair<int, int>{p, q + 1})
                return false;
        return true;
    };
    rep.forms_deg1 = true;
    std::vector<Skew> w10(A.m), w01(A.m);
    for (std::size_t a = 0; a < A.m; ++a) {
        w10[a] = from_section(mat_column(Q10, a));
        w01[a] = from_section(mat_column(Q01, a));
        if (!parts_within(w10[a], 1, 0)) rep.forms_deg1 = false;
        if (!parts_within(w01[a], 0, 1)) rep.forms_deg1 = false;
    }
    rep.forms_low = true;
    for (std::size_t a = 0; a < A.m; ++a)
        for (std::size_t b = 0; b < A.m; ++b) {
            if (a < b && !parts_within(wedge(w10[a], w10[b]), 2, 0)) rep.forms_low = false;
            if (a < b && !parts_within(wedge(w01[a], w01[b]), 0, 2)) rep.forms_low = false;
            if (!parts_within(wedge(w10[a], w01[b]), 1, 1)) rep.forms_low = false;
        }

    rep.torsion_free = nijenhuis_is_zero(A, J);

    if (rep.closure10 != rep.torsion_free || rep.closure01 != rep.torsion_free ||
        rep.forms_deg1 != rep.torsion_free || rep.forms_low != rep.torsion_free)
        throw std::logic_error("integrability criteria disagree");
    rep.integrable = rep.torsion_free;
    return rep;
}

// phi J1 = J2 phi as matrices
inline bool check_ac_morphism(const Algebroid& A1, const Morphism& phi, const Mat& J1,
                              const Mat& J2) {
    const RingCtx& R = A1.R;
    return mat_eq(R, mat_mul(R, phi.M, J1), mat_mul(R, J2, phi.M));
}

// pullback of a form along a morphism, slotwise transpose action
inline Skew pullback_form(const Algebroid& A1, const Morphism& phi, const Skew& w) {
    return slotwise(A1.R, mat_transpose(phi.M), w);
}

// ---------------------------------------------------------------------------
// Hamiltonian sections s_f, the (1,0) derivative of f fed into the bisection
// ---------------------------------------------------------------------------

inline Section hamiltonian_section(const Algebroid& A, const Mat& J, const Skew& pi20,
                                   const Poly& f) {
    Skew df = from_section(A.d_fun_section(f));
    Skew d10 = bigrade_part(bigrade_form(A, J, df), 1, 0, 1);
    Skew s = interior(to_section(d10, A.m), pi20);
    return to_section(s, A.m);
}

// ---------------------------------------------------------------------------
// cohomology of the raising coboundary on constant-coefficient instances
// ---------------------------------------------------------------------------

struct CohomologyResult {
    std::size_t dim_space = 0;   // dim of the (p,q) level
    std::size_t dim_kernel = 0;
    std::size_t dim_image = 0;   // image arriving from (p-1,q)
    std::size_t dim_h = 0;
    std::vector<Skew> representatives;
};

namespace detail {

inline bool poly_constant(const Poly& f) {
    for (auto& t : f.terms)
        for (auto d : t.first.e)
            if (d != 0) return false;
    return true;
}

inline QI poly_const_value(const RingCtx& R, const Poly& f) {
    std::vector<QI> origin(R.nvars(), QI(0));
    return R.eval(f, origin);
}

// greedy independent columns of a constant projector, as QI vectors
inline std::vector<std::vector<QI>> projector_frame(const RingCtx& R, const Mat& P,
                                                    std::size_t want) {
    std::size_t m = P.size();
    std::vector<std::vector<QI>> picked;
    QIMat stack;
    for (std::size_t b = 0; b < m && picked.size() < want; ++b) {
        std::vector<QI> col(m);
        for (std::size_t c = 0; c < m; ++c) col[c] = poly_const_value(R, P[c][b]);
        stack.push_back(col);
        if (qi_rank(stack) == stack.size())
            picked.push_back(col);
        else
            stack.pop_back();
    }
    return picked;
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::size_t>& cur,
                    std::size_t start, std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, cur, i + 1, out);
        cur.pop_back();
    }
}

inline std::vector<std::vector<std::size_t>> all_subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    subsets(n, k, cur, 0, out);
    return out;
}

// coordinates of a constant skew tensor over the sorted index tuples
inline std::vector<QI> skew_coords(const RingCtx& R, const Skew& S,
                                   const std::vector<std::vector<std::size_t>>& tuples) {
    std::vector<QI> v(tuples.size(), QI(0));
    for (std::size_t t = 0; t < tuples.size(); ++t) {
        Idx idx;
        for (auto i : tuples[t]) idx.push_back(static_cast<unsigned char>(i));
        v[t] = poly_const_value(R, S.coeff(idx));
    }
    return v;
}

}  // namespace detail

inline CohomologyResult clp_cohomology(const Algebroid& A, const Mat& J, const Skew& pi20,
                                       int p, int q) {
    const RingCtx& R = A.R;
    for (auto& row : A.anchor)
        for (auto& e : row)
            if (!R.is_zero(e)) throw complex_error("cohomology needs a vanishing anchor");
    for (auto& [ab, row] : A.C)
        for (auto& e : row)
            if (!detail::poly_constant(e))
                throw complex_error("cohomology needs constant structure functions");
    if (!mat_is_constant(J)) throw complex_error("cohomology needs a constant endomorphism");
    for (auto& [idx, f] : pi20.terms)
        if (!detail::poly_constant(f))
            throw complex_error("cohomology needs a constant bisection");
    if (!integrability_report(A, J).integrable)
        throw complex_error("cohomology needs an integrable structure");
    if (!is_acp(A, J, pi20).acp)
        throw complex_error("cohomology needs an almost complex Poisson bisection");

    std::size_t m = A.m, half = m / 2;
    if (p < 0 || q < 0 || p > (int)half || q > (int)half)
        return {};

    auto zcols = detail::projector_frame(R, eigenprojector(R, J, true), half);
    std::vector<Section> z(half), zb(half);
    for (std::size_t k = 0; k < half; ++k) {
        z[k].assign(m, Poly{});
        zb[k].assign(m, Poly{});
        for (std::size_t c = 0; c < m; ++c) {
            z[k][c] = R.constant(zcols[k][c]);
            zb[k][c] = R.constant(QI(zcols[k][c].re, -zcols[k][c].im));
        }
    }

    auto level_basis = [&](int pp, int qq) {
        std::vector<Skew> basis;
        if (pp < 0 || qq < 0 || pp > (int)half || qq > (int)half) return basis;
        auto pi_sets = detail::all_subsets(half, (std::size_t)pp);
        auto qi_sets = detail::all_subsets(half, (std::size_t)qq);
        for (auto& I : pi_sets)
            for (auto& K : qi_sets) {
                Skew w(0);
                w.add_term({}, R.constant(1));
                for (auto i : I) w = wedge(w, from_section(z[i]));
                for (auto k : K) w = wedge(w, from_section(zb[k]));
                w.reduce(R);
                basis.push_back(w);
            }
        return basis;
    };

    auto raise = [&](const Skew& B, int pp, int qq) {
        Bigrade parts = sigma1_parts(A, J, pi20, B);
        for (auto& [pq, part] : parts)
            if (pq != std::pair<int, int>{pp + 1, qq} && pq != std::pair<int, int>{pp + 2, qq - 1})
                throw std::logic_error("coboundary left the expected bidegrees");
        return bigrade_part(parts, pp + 1, qq, B.deg + 1);
    };

    auto level_matrix = [&](const std::vector<Skew>& basis, int pp, int qq) {
        QIMat M;  // columns indexed by basis, rows by coordinate tuples of degree pp+qq+1
        auto tuples = detail::all_subsets(m, (std::size_t)(pp + qq + 1));
        M.assign(tuples.size(), std::vector<QI>(basis.size(), QI(0)));
        for (std::size_t j = 0; j < basis.size(); ++j) {
            Skew img = raise(basis[j], pp, qq);
            Skew img2 = raise(img, pp + 1, qq);
            if (!img2.is_zero(R)) throw std::logic_error("raising coboundary does not square to zero");
            auto v = detail::skew_coords(R, img, tuples);
            for (std::size_t r = 0; r < tuples.size(); ++r) M[r][j] = v[r];
        }
        return M;
    };

    CohomologyResult out;
    auto basis_here = level_basis(p, q);
    out.dim_space = basis_here.size();
    if (basis_here.empty()) return out;

    QIMat Mhere = level_matrix(basis_here, p, q);
    std::size_t rank_here = qi_rank(Mhere);
    out.dim_kernel = out.dim_space - rank_here;

    auto basis_prev = level_basis(p - 1, q);
    std::vector<std::vector<QI>> image_vecs;
    auto tuples_here = detail::all_subsets(m, (std::size_t)(p + q));
    for (auto& B : basis_prev) {
        Skew img = raise(B, p - 1, q);
        image_vecs.push_back(detail::skew_coords(R, img, tuples_here));
    }
    QIMat img_stack;
    for (auto& v : image_vecs) {
        img_stack.push_back(v);
        if (qi_rank(img_stack) != img_stack.size()) img_stack.pop_back();
    }
    out.dim_image = img_stack.size();
    out.dim_h = out.dim_kernel - out.dim_image;

    // kernel combinations of the basis, then the ones independent of the image
    QIMat kernel_rows;
    {
        // null space of Mhere by reduction on the transpose augmented trick:
        // reduce Mhere, read free columns
        QIMat Mr = Mhere;
        std::size_t rows = Mr.size(), cols = basis_here.size();
        std::vector<long> pivot_of_col(cols, -1);
        std::size_t rank = 0;
        for (std::size_t c = 0; c < cols && rank < rows; ++c) {
            std::size_t piv = rank;
            while (piv < rows && Mr[piv][c].is_zero()) ++piv;
            if (piv == rows) continue;
            std::swap(Mr[piv], Mr[rank]);
            QI inv = QI(1) / Mr[rank][c];
            for (std::size_t j = 0; j < cols; ++j) Mr[rank][j] *= inv;
            for (std::size_t r = 0; r < rows; ++r) {
                if (r == rank || Mr[r][c].is_zero()) continue;
                QI f = Mr[r][c];
                for (std::size_t j = 0; j < cols; ++j) Mr[r][j] -= f * Mr[rank][j];
            }
            pivot_of_col[c] = static_cast<long>(rank);
            ++rank;
        }
        for (std::size_t c = 0; c < cols; ++c) {
            if (pivot_of_col[c] >= 0) continue;
            std::vector<QI> combo(cols, QI(0));
            combo[c] = QI(1);
            for (std::size_t cc = 0; cc < cols; ++cc)
                if (pivot_of_col[cc] >= 0) combo[cc] = -Mr[(std::size_t)pivot_of_col[cc]][c];
            kernel_rows.push_back(combo);
        }
    }
    QIMat rep_stack = img_stack;
    for (auto& combo : kernel_rows) {
        std::vector<QI> vec(tuples_here.size(), QI(0));
        Skew rep(p + q);
        for (std::size_t j = 0; j < basis_here.size(); ++j) {
            if (combo[j].is_zero()) continue;
            rep += combo[j] * basis_here[j];
        }
        rep.reduce(R);
        vec = detail::skew_coords(R, rep, tuples_here);
        rep_stack.push_back(vec);
        if (qi_rank(rep_stack) == rep_stack.size())
            out.representatives.push_back(rep);
        else
            rep_stack.pop_back();
    }
    return out;
}

// ---------------------------------------------------------------------------
// nondegenerate correspondence between (2,0) forms and (2,0) bisections
// ---------------------------------------------------------------------------

inline Skew symplectic_to_poisson(const Algebroid& A, const Mat& J, const Skew& w20) {
    const RingCtx& R = A.R;
    if (w20.deg != 2) throw complex_error("form of degree 2 expected");
    auto pt = pure_type(bigrade_form(A, J, w20));
    if (pt != std::pair<int, int>{2, 0}) throw complex_error("form is not of type (2,0)");
    if (!de_components(A, J, w20).hol.is_zero(R))
        throw complex_error("form is not closed in the raising direction");
    Skew wr = w20 + w20.conj();
    wr.reduce(R);
    Mat Om = skew_to_matrix(R, wr, A.m);
    if (!mat_is_constant(Om)) throw complex_error("inversion needs constant coefficients");
    QIMat inv;
    if (!qi_invert(mat_to_qi(R, Om), inv)) throw complex_error("degenerate form");
    for (auto& row : inv)
        for (auto& e : row) e = -e;
    Skew pi20 = slotwise(R, mat_from_qi(R, inv), w20);
    if (!sn_bracket(A, pi20, pi20).is_zero(R))
        throw std::logic_error("induced bisection fails the self-bracket identity");
    return pi20;
}

inline Skew poisson_to_symplectic(const Algebroid& A, const Mat& J, const Skew& pi20) {
    const RingCtx& R = A.R;
    if (!is_acp(A, J, pi20).acp) throw complex_error("almost complex Poisson bisection expected");
    Skew pi = pi20 + pi20.conj();
    pi.reduce(R);
    Skew w20 = ie_inverse(A, pi, pi20);
    if (!nijenhuis_is_zero(A, J))
        throw std::logic_error("nondegenerate bisection with torsion: the structure equations are inconsistent");
    if (!de_components(A, J, w20).hol.is_zero(R))
        throw std::logic_error("induced form fails the closedness identity");
    return w20;
}

}  // namespace lax
