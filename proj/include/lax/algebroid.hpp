#pragma once

#include "tensor.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace lax {

// Lie algebroid in a fixed frame over a polynomial quotient ring:
// anchor rows rho_a = anchor[a], structure functions [e_a, e_b] = C^c_{ab} e_c
// stored for a < b.
struct Algebroid {
    RingCtx R;
    std::size_t m = 0;                                    // rank
    std::vector<std::vector<Poly>> anchor;                // m x nvars
    std::map<std::pair<int, int>, Section> C;             // (a,b) with a < b -> m coeffs

    std::size_t n() const { return R.nvars(); }

    void set_structure(int a, int b, int c, const Poly& v) {
        if (a == b) throw ring_error("structure constant with repeated lower indices");
        int sa = a, sb = b;
        Poly w = v;
        if (sa > sb) { std::swap(sa, sb); w = -v; }
        auto& row = C[{sa, sb}];
        if (row.empty()) row.assign(m, Poly{});
        row[c] += w;
        if (row[c].is_zero()) row[c] = Poly{};
    }

    Poly Cc(int a, int b, int c) const {
        if (a == b) return Poly{};
        bool flip = a > b;
        if (flip) std::swap(a, b);
        auto it = C.find({a, b});
        if (it == C.end()) return Poly{};
        return flip ? -it->second[c] : it->second[c];
    }

    Section frame_bracket(int a, int b) const {
        Section s(m, Poly{});
        for (std::size_t c = 0; c < m; ++c) s[c] = Cc(a, b, static_cast<int>(c));
        return s;
    }

    // rho(e_a)(f)
    Poly rho_frame(int a, const Poly& f) const {
        Poly tot;
        for (std::size_t i = 0; i < n(); ++i) {
            if (anchor[a][i].is_zero()) continue;
            Poly d = R.diff(f, i);
            if (!d.is_zero()) tot += anchor[a][i] * d;
        }
        return R.reduce(tot);
    }

    Poly rho(const Section& s, const Poly& f) const {
        Poly tot;
        for (std::size_t a = 0; a < m; ++a)
            if (!s[a].is_zero()) tot += s[a] * rho_frame(static_cast<int>(a), f);
        return R.reduce(tot);
    }

    // [f e_a, g e_b] on arbitrary sections via bilinear expansion
    Section bracket(const Section& s, const Section& t) const {
        Section out(m, Poly{});
        for (std::size_t a = 0; a < m; ++a) {
            if (s[a].is_zero()) continue;
            for (std::size_t b = 0; b < m; ++b) {
                if (t[b].is_zero()) continue;
                for (std::size_t c = 0; c < m; ++c) {
                    Poly k = Cc(static_cast<int>(a), static_cast<int>(b), static_cast<int>(c));
                    if (!k.is_zero()) out[c] += s[a] * t[b] * k;
                }
            }
        }
        for (std::size_t a = 0; a < m; ++a) {
            if (!s[a].is_zero())
                for (std::size_t b = 0; b < m; ++b) {
                    Poly d = rho_frame(static_cast<int>(a), t[b]);
                    if (!d.is_zero()) out[b] += s[a] * d;
                }
            if (!t[a].is_zero())
                for (std::size_t b = 0; b < m; ++b) {
                    Poly d = rho_frame(static_cast<int>(a), s[b]);
                    if (!d.is_zero()) out[b] -= t[a] * d;
                }
        }
        for (auto& v : out) v = R.reduce(v);
        return out;
    }

    Section unit(int a) const {
        Section s(m, Poly{});
        s[a] = R.constant(1);
        return s;
    }

    // ---- exterior derivative on forms (coefficients = values on sorted frame tuples) ----

    Poly form_on(const Skew& w, const Idx& tuple) const { return w.coeff(tuple); }

    Skew d(const Skew& w) const {
        Skew out(w.deg + 1);
        std::vector<unsigned char> tuple(w.deg + 1);
        enum_tuples(0, 0, tuple, [&](const Idx& t) {
            Poly v = d_component(w, t);
            if (!v.is_zero()) out.add_term(t, v);
        });
        return out;
    }

    Poly d_component(const Skew& w, const Idx& t) const {
        Poly tot;
        std::size_t p1 = t.size();
        for (std::size_t i = 0; i < p1; ++i) {
            Idx rest;
            for (std::size_t k = 0; k < p1; ++k)
                if (k != i) rest.push_back(t[k]);
            Poly inner = w.coeff(rest);
            if (!inner.is_zero()) {
                Poly d = rho_frame(t[i], inner);
                if (!d.is_zero()) tot += (i % 2 == 0) ? d : -d;
            }
        }
        for (std::size_t i = 0; i < p1; ++i)
            for (std::size_t j = i + 1; j < p1; ++j) {
                Idx rest;
                for (std::size_t k = 0; k < p1; ++k)
                    if (k != i && k != j) rest.push_back(t[k]);
                for (std::size_t c = 0; c < m; ++c) {
                    Poly k = Cc(t[i], t[j], static_cast<int>(c));
                    if (k.is_zero()) continue;
                    Idx full{static_cast<unsigned char>(c)};
                    full.insert(full.end(), rest.begin(), rest.end());
                    Poly inner = w.coeff(full);
                    if (inner.is_zero()) continue;
                    Poly term = k * inner;
                    tot += ((i + j) % 2 == 0) ? term : -term;
                }
            }
        return R.reduce(tot);
    }

    Skew d_fun(const Poly& f) const {
        Skew out(1);
        for (std::size_t a = 0; a < m; ++a) {
            Poly v = rho_frame(static_cast<int>(a), f);
            if (!v.is_zero()) out.add_term(Idx{static_cast<unsigned char>(a)}, v);
        }
        return out;
    }

    Section d_fun_section(const Poly& f) const {
        Section s(m, Poly{});
        for (std::size_t a = 0; a < m; ++a) s[a] = rho_frame(static_cast<int>(a), f);
        return s;
    }

    // Lie derivative of a p-form along a section
    Skew lie_form(const Section& s, const Skew& w) const {
        Skew out(w.deg);
        std::vector<unsigned char> tuple(w.deg);
        enum_tuples(0, 0, tuple, [&](const Idx& t) {
            Poly v = rho(s, w.coeff(t));
            for (std::size_t k = 0; k < t.size(); ++k) {
                Section br = bracket(s, unit(t[k]));
                for (std::size_t c = 0; c < m; ++c) {
                    if (br[c].is_zero()) continue;
                    Idx sub = t;
                    sub[k] = static_cast<unsigned char>(c);
                    Poly inner = w.coeff(sub);
                    if (!inner.is_zero()) v -= br[c] * inner;
                }
            }
            v = R.reduce(v);
            if (!v.is_zero()) out.add_term(t, v);
        });
        return out;
    }

    template <typename F>
    void enum_tuples(std::size_t depth, std::size_t start,
                     std::vector<unsigned char>& tuple, F&& fn) const {
        if (depth == tuple.size()) {
            fn(tuple);
            return;
        }
        for (std::size_t v = start; v < m; ++v) {
            tuple[depth] = static_cast<unsigned char>(v);
            enum_tuples(depth + 1, v + 1, tuple, fn);
        }
    }

    // ---- verification ----

    struct Verdict {
        bool ok = true;
        std::vector<std::string> failures;
        void fail(std::string msg) {
            ok = false;
            failures.push_back(std::move(msg));
        }
    };

    Verdict verify() const {
        Verdict v;
        // anchor compatibility with the bracket
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b)
                for (std::size_t i = 0; i < n(); ++i) {
                    Poly lhs;
                    for (std::size_t j = 0; j < n(); ++j) {
                        if (!anchor[a][j].is_zero()) lhs += anchor[a][j] * R.diff(anchor[b][i], j);
                        if (!anchor[b][j].is_zero()) lhs -= anchor[b][j] * R.diff(anchor[a][i], j);
                    }
                    Poly rhs;
                    for (std::size_t c = 0; c < m; ++c) {
                        Poly k = Cc(static_cast<int>(a), static_cast<int>(b), static_cast<int>(c));
                        if (!k.is_zero()) rhs += anchor[c][i] * k;
                    }
                    if (!R.eq(lhs, rhs))
                        v.fail("anchor/bracket compatibility fails on (e_" + std::to_string(a + 1)
                               + ", e_" + std::to_string(b + 1) + "), coordinate "
                               + std::to_string(i + 1));
                }
        // Jacobi in structure functions
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b)
                for (std::size_t c = b + 1; c < m; ++c)
                    for (std::size_t dd = 0; dd < m; ++dd) {
                        Poly tot;
                        const std::size_t cyc[3][3] = {{a, b, c}, {b, c, a}, {c, a, b}};
                        for (auto& t : cyc) {
                            tot += rho_frame(static_cast<int>(t[0]),
                                             Cc(static_cast<int>(t[1]), static_cast<int>(t[2]),
                                                static_cast<int>(dd)));
                            for (std::size_t e = 0; e < m; ++e)
                                tot += Cc(static_cast<int>(t[0]), static_cast<int>(t[1]),
                                          static_cast<int>(e))
                                       * Cc(static_cast<int>(t[2]), static_cast<int>(e),
                                            static_cast<int>(dd));
                        }
                        if (!R.is_zero(tot))
                            v.fail("Jacobi fails on (e_" + std::to_string(a + 1) + ", e_"
                                   + std::to_string(b + 1) + ", e_" + std::to_string(c + 1)
                                   + ") component " + std::to_string(dd + 1));
                    }
        // anchor tangency to the relation ideal
        for (auto& rel : R.rels) {
            Poly relp;
            Mono sq(R.nvars());
            sq.e[rel.var] = 2;
            relp.terms.emplace(sq, QI(1));
            relp -= rel.tail;
            for (std::size_t a = 0; a < m; ++a)
                if (!R.is_zero(rho_frame(static_cast<int>(a), relp)))
                    v.fail("anchor is not tangent to the relation ideal (row "
                           + std::to_string(a + 1) + ")");
        }
        return v;
    }
};

// Morphism over the same base ring: phi maps the source frame into target
// sections, phi(e_a) = sum_b M[b][a] e'_b.
struct Morphism {
    Mat M;   // target.m x source.m
};

inline Section apply_morphism(const RingCtx& R, const Morphism& phi, const Section& s) {
    std::size_t m2 = phi.M.size(), m1 = phi.M[0].size();
    Section out(m2, Poly{});
    for (std::size_t b = 0; b < m2; ++b) {
        Poly v;
        for (std::size_t a = 0; a < m1; ++a)
            if (!phi.M[b][a].is_zero() && !s[a].is_zero()) v += phi.M[b][a] * s[a];
        out[b] = R.reduce(v);
    }
    return out;
}

struct MorphismVerdict {
    bool anchor_ok = true, bracket_ok = true;
    bool ok() const { return anchor_ok && bracket_ok; }
};

inline MorphismVerdict check_morphism(const Algebroid& src, const Algebroid& dst,
                                      const Morphism& phi) {
    MorphismVerdict v;
    const RingCtx& R = src.R;
    for (std::size_t a = 0; a < src.m && v.anchor_ok; ++a)
        for (std::size_t i = 0; i < src.n(); ++i) {
            Poly lhs;
            for (std::size_t b = 0; b < dst.m; ++b)
                if (!phi.M[b][a].is_zero()) lhs += dst.anchor[b][i] * phi.M[b][a];
            if (!R.eq(lhs, src.anchor[a][i])) { v.anchor_ok = false; break; }
        }
    for (std::size_t a = 0; a < src.m && v.bracket_ok; ++a)
        for (std::size_t b = a + 1; b < src.m && v.bracket_ok; ++b) {
            Section lhs = apply_morphism(R, phi, src.frame_bracket(static_cast<int>(a),
                                                                   static_cast<int>(b)));
            Section rhs = dst.bracket(apply_morphism(R, phi, src.unit(static_cast<int>(a))),
                                      apply_morphism(R, phi, src.unit(static_cast<int>(b))));
            for (std::size_t c = 0; c < dst.m; ++c)
                if (!R.eq(lhs[c], rhs[c])) { v.bracket_ok = false; break; }
        }
    return v;
}

} // namespace lax
