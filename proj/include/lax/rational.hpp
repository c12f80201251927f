#pragma once

#include <gmpxx.h>
#include <string>
#include <stdexcept>

namespace lax {

// Exact complex rational a + b*i over GMP rationals.
struct QI {
    mpq_class re, im;

    QI() : re(0), im(0) {}
    QI(long r) : re(r), im(0) {}
    QI(const mpq_class& r) : re(r), im(0) {}
    QI(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    static QI unit_i() { return QI(mpq_class(0), mpq_class(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    bool is_one() const { return re == 1 && im == 0; }

    QI conj() const { return QI(re, -im); }

    QI operator-() const { return QI(-re, -im); }
    QI& operator+=(const QI& o) { re += o.re; im += o.im; return *this; }
    QI& operator-=(const QI& o) { re -= o.re; im -= o.im; return *this; }

    friend QI operator+(QI a, const QI& b) { a += b; return a; }
    friend QI operator-(QI a, const QI& b) { a -= b; return a; }
    friend QI operator*(const QI& a, const QI& b) {
        return QI(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend QI operator/(const QI& a, const QI& b) {
        mpq_class n = b.re * b.re + b.im * b.im;
        if (n == 0) throw std::domain_error("division by zero");
        return QI((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
    }
    QI& operator*=(const QI& o) { *this = *this * o; return *this; }
    QI& operator/=(const QI& o) { *this = *this / o; return *this; }

    friend bool operator==(const QI& a, const QI& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const QI& a, const QI& b) { return !(a == b); }
};

inline std::string rat_str(const mpq_class& q) { return q.get_str(); }

// Canonical text form: "0", "3/2", "i", "-i", "2*i", "1+i", "3/2-2*i".
inline std::string to_string(const QI& c) {
    if (c.is_zero()) return "0";
    std::string s;
    if (c.re != 0) s += rat_str(c.re);
    if (c.im != 0) {
        if (c.im == 1) s += (c.re != 0 ? "+i" : "i");
        else if (c.im == -1) s += "-i";
        else {
            if (c.re != 0 && c.im > 0) s += "+";
            s += rat_str(c.im) + "*i";
        }
    }
    return s;
}

} // namespace lax
