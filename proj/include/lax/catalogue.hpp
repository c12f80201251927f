#pragma once

#include "model.hpp"

namespace lax {
namespace catalogue {

inline Algebroid point_algebra(std::size_t m) {
    Algebroid A;
    A.R = RingCtx(std::vector<std::string>{});
    A.m = m;
    A.anchor.assign(m, {});
    return A;
}

inline Model abelian(std::size_t m) {
    Model M;
    M.A = point_algebra(m);
    return M;
}

inline Model so3() {
    Model M;
    M.A = point_algebra(3);
    auto one = M.A.R.constant(1);
    M.A.set_structure(0, 1, 2, one);
    M.A.set_structure(1, 2, 0, one);
    M.A.set_structure(2, 0, 1, one);
    Skew pi(2);
    pi.add_term(Idx{0, 1}, one);
    M.tensors["pi12"] = pi;
    return M;
}

inline Model sl2() {
    Model M;
    M.A = point_algebra(3);
    auto& R = M.A.R;
    M.A.set_structure(0, 1, 1, R.constant(2));    // [h,e] = 2e
    M.A.set_structure(0, 2, 2, R.constant(-2));   // [h,f] = -2f
    M.A.set_structure(1, 2, 0, R.constant(1));    // [e,f] = h
    return M;
}

inline Model heisenberg3() {
    Model M;
    M.A = point_algebra(3);
    M.A.set_structure(0, 1, 2, M.A.R.constant(1));
    Skew pi(2);
    pi.add_term(Idx{0, 2}, M.A.R.constant(1));
    M.tensors["pi13"] = pi;
    return M;
}

// pairs (e1,e3), (e2,e4): J e1 = e3, J e2 = e4
inline Mat j_std(const RingCtx& R, std::size_t half) {
    std::size_t m = 2 * half;
    Mat J = mat_zero(m, m, R);
    for (std::size_t a = 0; a < half; ++a) {
        J[a + half][a] = R.constant(1);
        J[a][a + half] = R.constant(-1);
    }
    return J;
}

// interleaved pairing (e1,e3), (e2,e4) on rank 4
inline Mat j_interleaved4(const RingCtx& R) {
    Mat J = mat_zero(4, 4, R);
    J[2][0] = R.constant(1);
    J[0][2] = R.constant(-1);
    J[3][1] = R.constant(1);
    J[1][3] = R.constant(-1);
    return J;
}

inline Model heisenberg4() {
    Model M;
    M.A = point_algebra(4);
    M.A.set_structure(0, 1, 2, M.A.R.constant(1));
    M.endos["J"] = j_interleaved4(M.A.R);
    return M;
}

// realified aff(1,C): [e1,e2] = e2, [e1,e4] = e4, [e3,e2] = e4, [e3,e4] = -e2,
// complex structure e1 -> e3, e2 -> e4; z1 = e1 - i e3, z2 = e2 - i e4.
inline Model aff_c() {
    Model M;
    M.A = point_algebra(4);
    auto& R = M.A.R;
    M.A.set_structure(0, 1, 1, R.constant(1));
    M.A.set_structure(0, 3, 3, R.constant(1));
    M.A.set_structure(2, 1, 3, R.constant(1));
    M.A.set_structure(2, 3, 1, R.constant(-1));
    M.endos["J"] = j_interleaved4(R);
    Skew pi20(2);   // z1 ^ z2 = (e1 - i e3) ^ (e2 - i e4)
    pi20.add_term(Idx{0, 1}, R.constant(1));
    pi20.add_term(Idx{0, 3}, R.constant(QI(mpq_class(0), mpq_class(-1))));
    pi20.add_term(Idx{2, 1}, R.constant(QI(mpq_class(0), mpq_class(-1))));
    pi20.add_term(Idx{2, 3}, R.constant(-1));
    M.tensors["pi20"] = pi20;
    return M;
}

// rank 4 over the plane, anchor e1 -> d/dx, e2 -> d/dy, e3, e4 -> 0, abelian
inline Model plane4() {
    Model M;
    auto& A = M.A;
    A.R = RingCtx({"x", "y"});
    A.m = 4;
    A.anchor.assign(4, std::vector<Poly>(2, Poly{}));
    A.anchor[0][0] = A.R.constant(1);
    A.anchor[1][1] = A.R.constant(1);
    M.endos["J"] = j_interleaved4(A.R);
    Skew pi20(2);
    pi20.add_term(Idx{0, 1}, A.R.constant(1));
    pi20.add_term(Idx{0, 3}, A.R.constant(QI(mpq_class(0), mpq_class(-1))));
    pi20.add_term(Idx{2, 1}, A.R.constant(QI(mpq_class(0), mpq_class(-1))));
    pi20.add_term(Idx{2, 3}, A.R.constant(-1));
    M.tensors["pi20"] = pi20;
    return M;
}

// unit sphere S^{2n-1} in R^{2n} with the projected frame:
// anchor (I - x x^t), [e_a, e_b] = -x^b e_a + x^a e_b, J = J0 = [[0,-I],[I,0]].
inline Model sphere(std::size_t nn) {
    Model M;
    auto& A = M.A;
    std::size_t m = 2 * nn;
    std::vector<std::string> names;
    for (std::size_t k = 1; k <= m; ++k) names.push_back("x" + std::to_string(k));
    A.R = RingCtx(names);
    Poly rel;
    for (std::size_t k = 0; k < m; ++k) rel += A.R.var(k) * A.R.var(k);
    rel -= A.R.constant(1);
    A.R.add_relation(rel);
    A.m = m;
    A.anchor.assign(m, std::vector<Poly>(m, Poly{}));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t i = 0; i < m; ++i) {
            Poly v = -(A.R.var(a) * A.R.var(i));
            if (a == i) v += A.R.constant(1);
            A.anchor[a][i] = v;
        }
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
            A.set_structure(static_cast<int>(a), static_cast<int>(b), static_cast<int>(a),
                            -A.R.var(b));
            A.set_structure(static_cast<int>(a), static_cast<int>(b), static_cast<int>(b),
                            A.R.var(a));
        }
    Mat J0 = mat_zero(m, m, A.R);
    for (std::size_t a = 0; a < nn; ++a) {
        J0[a][a + nn] = A.R.constant(-1);
        J0[a + nn][a] = A.R.constant(1);
    }
    M.endos["J"] = J0;
    M.bisections["Jt"] = J0;
    return M;
}

} // namespace catalogue
} // namespace lax
