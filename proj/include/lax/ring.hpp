#pragma once

#include "rational.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lax {

struct ring_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Monomial: exponent vector, fixed length = number of ring variables.
struct Mono {
    std::vector<unsigned char> e;

    explicit Mono(std::size_t n = 0) : e(n, 0) {}

    unsigned total_degree() const {
        unsigned d = 0;
        for (auto x : e) d += x;
        return d;
    }
    bool operator<(const Mono& o) const { return e < o.e; }   // lex
    bool operator==(const Mono& o) const { return e == o.e; }

    Mono operator*(const Mono& o) const {
        Mono r(*this);
        for (std::size_t k = 0; k < e.size(); ++k) {
            int v = r.e[k] + o.e[k];
            if (v > 255) throw ring_error("monomial degree overflow");
            r.e[k] = static_cast<unsigned char>(v);
        }
        return r;
    }
};

// Sparse polynomial over QI. Arithmetic is ring-free; reduction modulo the
// relation ideal lives on RingCtx.
class Poly {
public:
    std::map<Mono, QI> terms;

    Poly() = default;
    explicit Poly(const QI& c, std::size_t nvars) {
        if (!c.is_zero()) terms.emplace(Mono(nvars), c);
    }

    bool is_zero() const { return terms.empty(); }

    static Poly var(std::size_t idx, std::size_t nvars) {
        Poly p;
        Mono m(nvars);
        m.e[idx] = 1;
        p.terms.emplace(std::move(m), QI(1));
        return p;
    }

    void add_term(const Mono& m, const QI& c) {
        if (c.is_zero()) return;
        auto it = terms.find(m);
        if (it == terms.end()) terms.emplace(m, c);
        else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    Poly operator-() const {
        Poly r;
        for (auto& [m, c] : terms) r.terms.emplace(m, -c);
        return r;
    }
    Poly& operator+=(const Poly& o) {
        for (auto& [m, c] : o.terms) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (auto& [m, c] : o.terms) add_term(m, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
    friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (auto& [ma, ca] : a.terms)
            for (auto& [mb, cb] : b.terms) r.add_term(ma * mb, ca * cb);
        return r;
    }
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }

    friend Poly operator*(const QI& c, const Poly& p) {
        Poly r;
        if (c.is_zero()) return r;
        for (auto& [m, v] : p.terms) r.terms.emplace(m, c * v);
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms == b.terms; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly conj() const {
        Poly r;
        for (auto& [m, c] : terms) r.terms.emplace(m, c.conj());
        return r;
    }

    // constant term access; std::nullopt if not a constant polynomial
    std::optional<QI> as_const() const {
        if (terms.empty()) return QI(0);
        if (terms.size() == 1 && terms.begin()->first.total_degree() == 0)
            return terms.begin()->second;
        return std::nullopt;
    }
};

// A relation x_v^2 = tail, tail free of every distinguished variable.
struct Relation {
    std::size_t var;
    Poly tail;
};

// Polynomial coefficient ring Q(i)[x_1..x_n] / (relations). Relations are
// restricted to the monic-quadratic shape above, which gives a terminating
// rewriting system with canonical normal forms.
class RingCtx {
public:
    std::vector<std::string> vars;
    std::vector<Relation> rels;

    RingCtx() = default;
    explicit RingCtx(std::vector<std::string> names) : vars(std::move(names)) {}

    std::size_t nvars() const { return vars.size(); }

    int var_index(const std::string& name) const {
        for (std::size_t k = 0; k < vars.size(); ++k)
            if (vars[k] == name) return static_cast<int>(k);
        return -1;
    }

    Poly constant(const QI& c) const { return Poly(c, nvars()); }
    Poly constant(long v) const { return Poly(QI(v), nvars()); }
    Poly var(std::size_t idx) const { return Poly::var(idx, nvars()); }
    Poly one() const { return Poly(QI(1), nvars()); }

    // a point must satisfy every installed relation exactly
    void check_point(const std::vector<QI>& pt) const {
        if (pt.size() != nvars()) throw ring_error("point has wrong dimension");
        for (auto& r : rels) {
            QI lhs = pt[r.var] * pt[r.var];
            QI rhs = eval(r.tail, pt);
            if (!(lhs == rhs)) throw ring_error("point violates a base relation");
        }
    }

    // Install a relation given as "p = 0". Picks the largest-index variable that
    // occurs only as a plain square with constant coefficient.
    void add_relation(const Poly& p) {
        for (int v = static_cast<int>(nvars()) - 1; v >= 0; --v) {
            QI lead;
            bool square_seen = false, clean = true;
            for (auto& [m, c] : p.terms) {
                unsigned char ev = m.e[v];
                if (ev == 0) continue;
                if (ev == 2 && m.total_degree() == 2) {
                    square_seen = true;
                    lead = c;
                } else {
                    clean = false;
                    break;
                }
            }
            if (!square_seen || !clean || lead.is_zero()) continue;
            for (auto& r : rels)
                if (r.var == static_cast<std::size_t>(v)) { clean = false; break; }
            if (!clean) continue;
            Poly sq;
            Mono m(nvars());
            m.e[v] = 2;
            sq.terms.emplace(m, lead);
            Poly tail = QI(-1) / lead * (p - sq);
            rels.push_back({static_cast<std::size_t>(v), std::move(tail)});
            validate_tails();
            return;
        }
        throw ring_error("unsupported relation shape: need a variable occurring only as a plain square");
    }

    void validate_tails() const {
        for (auto& r : rels)
            for (auto& r2 : rels)
                for (auto& [m, c] : r.tail.terms)
                    if (m.e[r2.var] != 0)
                        throw ring_error("relation tails must avoid all distinguished variables");
    }

    // Canonical normal form modulo the relations.
    Poly reduce(Poly p) const {
        if (rels.empty()) return p;
        Poly out;
        for (auto& [m, c] : p.terms) {
            Poly factor = constant(QI(1));
            Mono base = m;
            bool rewrote = false;
            for (auto& r : rels) {
                unsigned char k = base.e[r.var];
                if (k < 2) continue;
                rewrote = true;
                unsigned half = k / 2;
                base.e[r.var] = k % 2;
                for (unsigned t = 0; t < half; ++t) factor *= r.tail;
            }
            if (!rewrote) {
                out.add_term(m, c);
            } else {
                Poly monop;
                monop.terms.emplace(base, c);
                out += monop * factor;
            }
        }
        return out;
    }

    Poly mul(const Poly& a, const Poly& b) const { return reduce(a * b); }

    bool eq(const Poly& a, const Poly& b) const { return reduce(a - b).is_zero(); }
    bool is_zero(const Poly& p) const { return reduce(p).is_zero(); }

    Poly diff(const Poly& p, std::size_t v) const {
        Poly r;
        for (auto& [m, c] : p.terms) {
            if (m.e[v] == 0) continue;
            Mono d = m;
            d.e[v] -= 1;
            r.add_term(d, QI(mpq_class(static_cast<long>(m.e[v]))) * c);
        }
        return r;
    }

    QI eval(const Poly& p, const std::vector<QI>& point) const {
        QI tot;
        for (auto& [m, c] : p.terms) {
            QI v = c;
            for (std::size_t k = 0; k < nvars(); ++k)
                for (unsigned t = 0; t < m.e[k]; ++t) v *= point[k];
            tot += v;
        }
        return tot;
    }

    // ---- text form ----

    std::string str(const Poly& p) const {
        if (p.terms.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {   // highest lex first
            const QI& c = it->second;
            std::string mono = mono_str(it->first);
            bool neg = false;
            std::string body;
            if (c.is_real()) {
                mpq_class r = c.re;
                if (r < 0) { neg = true; r = -r; }
                if (mono.empty()) body = rat_str(r);
                else if (r == 1) body = mono;
                else body = rat_str(r) + "*" + mono;
            } else if (c.re == 0) {
                mpq_class im = c.im;
                if (im < 0) { neg = true; im = -im; }
                std::string cs = (im == 1) ? "i" : rat_str(im) + "*i";
                body = mono.empty() ? cs : cs + "*" + mono;
            } else {
                std::string cs = "(" + to_string(c) + ")";
                body = mono.empty() ? cs : cs + "*" + mono;
            }
            if (first) out += (neg ? "-" : "") + body;
            else out += (neg ? " - " : " + ") + body;
            first = false;
        }
        return out;
    }

    std::string mono_str(const Mono& m) const {
        std::string s;
        for (std::size_t k = 0; k < nvars(); ++k) {
            if (m.e[k] == 0) continue;
            if (!s.empty()) s += "*";
            s += vars[k];
            if (m.e[k] > 1) s += "^" + std::to_string(static_cast<int>(m.e[k]));
        }
        return s;
    }

    // ---- parser: ints, p/q, i, variable names, + - * / ^ ( ) ----

    Poly parse(const std::string& text) const {
        Parser ps{*this, text, 0};
        Poly r = ps.expr();
        ps.skip();
        if (ps.pos != text.size()) throw ring_error("trailing input in polynomial: " + text);
        return reduce(r);
    }

private:
    struct Parser {
        const RingCtx& R;
        const std::string& s;
        std::size_t pos;

        void skip() {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        bool eat(char c) {
            skip();
            if (pos < s.size() && s[pos] == c) { ++pos; return true; }
            return false;
        }

        Poly expr() {
            Poly r = term();
            for (;;) {
                skip();
                if (eat('+')) r += term();
                else if (eat('-')) r -= term();
                else return r;
            }
        }
        Poly term() {
            Poly r = unary();
            for (;;) {
                skip();
                if (eat('*')) r = r * unary();
                else if (eat('/')) {
                    Poly d = unary();
                    auto c = d.as_const();
                    if (!c || c->is_zero()) throw ring_error("divisor must be a nonzero constant");
                    r = (QI(1) / *c) * r;
                } else return r;
            }
        }
        Poly unary() {
            skip();
            if (eat('-')) return -unary();
            if (eat('+')) return unary();
            return power();
        }
        Poly power() {
            Poly b = atom();
            skip();
            if (eat('^')) {
                skip();
                std::size_t st = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                if (st == pos) throw ring_error("expected integer exponent");
                int e = std::stoi(s.substr(st, pos - st));
                Poly r = R.constant(1);
                for (int k = 0; k < e; ++k) r *= b;
                return r;
            }
            return b;
        }
        Poly atom() {
            skip();
            if (pos >= s.size()) throw ring_error("unexpected end of polynomial");
            char c = s[pos];
            if (c == '(') {
                ++pos;
                Poly r = expr();
                if (!eat(')')) throw ring_error("expected ')'");
                return r;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t st = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                return R.constant(QI(mpq_class(s.substr(st, pos - st))));
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t st = pos;
                while (pos < s.size() &&
                       (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                    ++pos;
                std::string name = s.substr(st, pos - st);
                if (name == "i") return R.constant(QI::unit_i());
                int idx = R.var_index(name);
                if (idx < 0) throw ring_error("unknown variable: " + name);
                return R.var(static_cast<std::size_t>(idx));
            }
            throw ring_error(std::string("unexpected character '") + c + "' in polynomial");
        }
    };
};

} // namespace lax
