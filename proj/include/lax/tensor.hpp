#pragma once

#include "linalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace lax {

using Idx = std::vector<unsigned char>;          // strictly increasing frame indices
using Section = std::vector<Poly>;               // coefficients on the frame (length m)

// sort an index tuple; returns permutation sign, 0 when an index repeats
inline int idx_normalize(Idx& idx) {
    int sign = 1;
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b + 1 + a < idx.size(); ++b)
            if (idx[b] > idx[b + 1]) {
                std::swap(idx[b], idx[b + 1]);
                sign = -sign;
            }
    for (std::size_t a = 0; a + 1 < idx.size(); ++a)
        if (idx[a] == idx[a + 1]) return 0;
    return sign;
}

// Skew tensor of fixed degree: sections of Lambda^p E (or Lambda^p E*, by usage).
struct Skew {
    int deg = 0;
    std::map<Idx, Poly> terms;

    Skew() = default;
    explicit Skew(int p) : deg(p) {}

    bool is_zero(const RingCtx& R) const {
        for (auto& [k, v] : terms)
            if (!R.is_zero(v)) return false;
        return true;
    }

    void add_term(Idx idx, const Poly& c) {
        if (c.is_zero()) return;
        int sg = idx_normalize(idx);
        if (sg == 0) return;
        Poly v = (sg == 1) ? c : -c;
        auto it = terms.find(idx);
        if (it == terms.end()) terms.emplace(std::move(idx), std::move(v));
        else {
            it->second += v;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    Poly coeff(Idx idx) const {
        int sg = idx_normalize(idx);
        if (sg == 0) return Poly{};
        auto it = terms.find(idx);
        if (it == terms.end()) return Poly{};
        return sg == 1 ? it->second : -it->second;
    }

    Skew operator-() const {
        Skew r(deg);
        for (auto& [k, v] : terms) r.terms.emplace(k, -v);
        return r;
    }
    Skew& operator+=(const Skew& o) {
        for (auto& [k, v] : o.terms) add_term(k, v);
        return *this;
    }
    Skew& operator-=(const Skew& o) {
        for (auto& [k, v] : o.terms) add_term(k, -v);
        return *this;
    }
    friend Skew operator+(Skew a, const Skew& b) { a += b; return a; }
    friend Skew operator-(Skew a, const Skew& b) { a -= b; return a; }
    friend Skew operator*(const Poly& f, const Skew& S) {
        Skew r(S.deg);
        for (auto& [k, v] : S.terms) {
            Poly w = f * v;
            if (!w.is_zero()) r.terms.emplace(k, std::move(w));
        }
        return r;
    }
    friend Skew operator*(const QI& c, const Skew& S) {
        Skew r(S.deg);
        if (c.is_zero()) return r;
        for (auto& [k, v] : S.terms) r.terms.emplace(k, c * v);
        return r;
    }

    Skew conj() const {
        Skew r(deg);
        for (auto& [k, v] : terms) r.terms.emplace(k, v.conj());
        return r;
    }

    void reduce(const RingCtx& R) {
        for (auto it = terms.begin(); it != terms.end();) {
            it->second = R.reduce(it->second);
            if (it->second.is_zero()) it = terms.erase(it);
            else ++it;
        }
    }
};

inline bool skew_eq(const RingCtx& R, const Skew& A, const Skew& B) {
    Skew d = A - B;
    return d.is_zero(R);
}

inline Skew wedge(const Skew& A, const Skew& B) {
    Skew r(A.deg + B.deg);
    for (auto& [ka, va] : A.terms)
        for (auto& [kb, vb] : B.terms) {
            Idx idx = ka;
            idx.insert(idx.end(), kb.begin(), kb.end());
            r.add_term(std::move(idx), va * vb);
        }
    return r;
}

inline Section unit_covector(const RingCtx& R, std::size_t m, std::size_t a) {
    Section s(m, Poly{});
    s[a] = R.constant(1);
    return s;
}

inline Skew from_section(const Section& s) {
    Skew r(1);
    for (std::size_t a = 0; a < s.size(); ++a)
        if (!s[a].is_zero()) r.terms.emplace(Idx{static_cast<unsigned char>(a)}, s[a]);
    return r;
}

inline Section to_section(const Skew& S, std::size_t m) {
    Section s(m, Poly{});
    for (auto& [k, v] : S.terms)
        if (k.size() == 1) s[k[0]] = v;
    return s;
}

// interior product: the covector contracts the FIRST slot,
// i_w (s_1 ^ ... ^ s_p) = sum_k (-1)^{k-1} w(s_k) s_1 ^ ... ^ hat s_k ^ ... ^ s_p
inline Skew interior(const Section& w, const Skew& S) {
    Skew r(S.deg - 1);
    for (auto& [k, v] : S.terms)
        for (std::size_t pos = 0; pos < k.size(); ++pos) {
            const Poly& wc = w[k[pos]];
            if (wc.is_zero()) continue;
            Idx rest;
            rest.reserve(k.size() - 1);
            for (std::size_t t = 0; t < k.size(); ++t)
                if (t != pos) rest.push_back(k[t]);
            Poly c = wc * v;
            r.add_term(std::move(rest), (pos % 2 == 0) ? c : -c);
        }
    return r;
}

// full pairing of equal-degree tensors over dual frames:
// <w_1 ^..^ w_p, s_1 ^..^ s_p> = det[w_i(s_j)]; on sorted basis tuples this is
// a plain diagonal match.
inline Poly pairing(const RingCtx& R, const Skew& F, const Skew& S) {
    Poly tot;
    for (auto& [k, v] : F.terms) {
        auto it = S.terms.find(k);
        if (it != S.terms.end()) tot += v * it->second;
    }
    return R.reduce(tot);
}

// bisection as matrix: M[a][b] = coefficient of e_a ^ e_b (a < b), skew-extended
inline Mat skew_to_matrix(const RingCtx& R, const Skew& S, std::size_t m) {
    Mat M = mat_zero(m, m, R);
    for (auto& [k, v] : S.terms) {
        M[k[0]][k[1]] = v;
        M[k[1]][k[0]] = -v;
    }
    return M;
}

inline Skew matrix_to_skew(const RingCtx& R, const Mat& M) {
    Skew S(2);
    for (std::size_t a = 0; a < M.size(); ++a)
        for (std::size_t b = a + 1; b < M.size(); ++b)
            if (!M[a][b].is_zero()) S.add_term(Idx{(unsigned char)a, (unsigned char)b}, M[a][b]);
    return S;
}

// sharp of a bisection matrix on a covector: (F# w)^a = F^{ab} w_b
inline Section sharp(const RingCtx& R, const Mat& F, const Section& w) {
    std::size_t m = F.size();
    Section out(m, Poly{});
    for (std::size_t a = 0; a < m; ++a) {
        Poly v;
        for (std::size_t b = 0; b < m; ++b)
            if (!F[a][b].is_zero() && !w[b].is_zero()) v += F[a][b] * w[b];
        out[a] = R.reduce(v);
    }
    return out;
}

// evaluation F(w, t) = w_a F^{ab} t_b = w(F# t)
inline Poly bis_eval(const RingCtx& R, const Mat& F, const Section& w, const Section& t) {
    Poly tot;
    std::size_t m = F.size();
    for (std::size_t a = 0; a < m; ++a) {
        if (w[a].is_zero()) continue;
        for (std::size_t b = 0; b < m; ++b)
            if (!F[a][b].is_zero() && !t[b].is_zero()) tot += w[a] * F[a][b] * t[b];
    }
    return R.reduce(tot);
}

inline std::string skew_str(const RingCtx& R, const Skew& S,
                            const std::string& sym = "e", int base = 1) {
    if (S.terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [k, v] : S.terms) {
        Poly c = R.reduce(v);
        if (c.is_zero()) continue;
        std::string mono;
        for (std::size_t t = 0; t < k.size(); ++t) {
            if (t) mono += "^";
            mono += sym + std::to_string(static_cast<int>(k[t]) + base);
        }
        std::string cs = R.str(c);
        std::string body;
        bool neg = false;
        if (mono.empty()) body = cs;
        else if (cs == "1") body = mono;
        else if (cs == "-1") { neg = true; body = mono; }
        else if (cs.find(' ') != std::string::npos) body = "(" + cs + ")*" + mono;
        else if (!cs.empty() && cs[0] == '-') { neg = true; body = cs.substr(1) + "*" + mono; }
        else body = cs + "*" + mono;
        if (first) out += (neg ? "-" : "") + body;
        else out += (neg ? " - " : " + ") + body;
        first = false;
    }
    return out.empty() ? "0" : out;
}

} // namespace lax
