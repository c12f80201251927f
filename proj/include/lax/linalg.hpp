#pragma once

#include "ring.hpp"

#include <vector>

namespace lax {

using Mat = std::vector<std::vector<Poly>>;   // entries in a RingCtx
using QIMat = std::vector<std::vector<QI>>;   // constant matrices

inline Mat mat_zero(std::size_t r, std::size_t c, const RingCtx& R) {
    return Mat(r, std::vector<Poly>(c, Poly{}));
}

inline Mat mat_identity(std::size_t n, const RingCtx& R) {
    Mat M = mat_zero(n, n, R);
    for (std::size_t k = 0; k < n; ++k) M[k][k] = R.constant(1);
    return M;
}

inline Mat mat_mul(const RingCtx& R, const Mat& A, const Mat& B) {
    std::size_t r = A.size(), inner = B.size(), c = B.empty() ? 0 : B[0].size();
    Mat out = mat_zero(r, c, R);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (A[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < c; ++j)
                if (!B[k][j].is_zero()) out[i][j] += A[i][k] * B[k][j];
        }
    for (auto& row : out)
        for (auto& e : row) e = R.reduce(e);
    return out;
}

inline Mat mat_add(const Mat& A, const Mat& B) {
    Mat out = A;
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A[i].size(); ++j) out[i][j] += B[i][j];
    return out;
}

inline Mat mat_sub(const Mat& A, const Mat& B) {
    Mat out = A;
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A[i].size(); ++j) out[i][j] -= B[i][j];
    return out;
}

inline Mat mat_scale(const QI& c, const Mat& A) {
    Mat out = A;
    for (auto& row : out)
        for (auto& e : row) e = c * e;
    return out;
}

inline Mat mat_transpose(const Mat& A) {
    if (A.empty()) return A;
    Mat out(A[0].size(), std::vector<Poly>(A.size()));
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A[i].size(); ++j) out[j][i] = A[i][j];
    return out;
}

inline bool mat_is_zero(const RingCtx& R, const Mat& A) {
    for (auto& row : A)
        for (auto& e : row)
            if (!R.is_zero(e)) return false;
    return true;
}

inline bool mat_eq(const RingCtx& R, const Mat& A, const Mat& B) {
    return mat_is_zero(R, mat_sub(A, B));
}

inline QIMat mat_eval(const RingCtx& R, const Mat& A, const std::vector<QI>& pt) {
    QIMat out(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) {
        out[i].resize(A[i].size());
        for (std::size_t j = 0; j < A[i].size(); ++j) out[i][j] = R.eval(A[i][j], pt);
    }
    return out;
}

inline bool mat_is_constant(const Mat& A) {
    for (auto& row : A)
        for (auto& e : row)
            for (auto& t : e.terms)
                for (auto d : t.first.e)
                    if (d != 0) return false;
    return true;
}

// only meaningful when mat_is_constant holds
inline QIMat mat_to_qi(const RingCtx& R, const Mat& A) {
    std::vector<QI> origin(R.nvars(), QI(0));
    return mat_eval(R, A, origin);
}

inline Mat mat_from_qi(const RingCtx& R, const QIMat& A) {
    Mat out(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) {
        out[i].reserve(A[i].size());
        for (auto& e : A[i]) out[i].push_back(R.constant(e));
    }
    return out;
}

// Gauss-Jordan inverse over Q(i); false if singular
inline bool qi_invert(QIMat A, QIMat& out) {
    std::size_t n = A.size();
    out.assign(n, std::vector<QI>(n, QI(0)));
    for (std::size_t k = 0; k < n; ++k) out[k][k] = QI(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && A[piv][c].is_zero()) ++piv;
        if (piv == n) return false;
        std::swap(A[piv], A[c]);
        std::swap(out[piv], out[c]);
        QI inv = QI(1) / A[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            A[c][j] *= inv;
            out[c][j] *= inv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || A[r][c].is_zero()) continue;
            QI f = A[r][c];
            for (std::size_t j = 0; j < n; ++j) {
                A[r][j] -= f * A[c][j];
                out[r][j] -= f * out[c][j];
            }
        }
    }
    return true;
}

// rank over Q(i) by Gaussian elimination
inline std::size_t qi_rank(QIMat M) {
    std::size_t rows = M.size();
    if (rows == 0) return 0;
    std::size_t cols = M[0].size(), rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && M[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(M[piv], M[rank]);
        QI inv = QI(1) / M[rank][c];
        for (std::size_t j = c; j < cols; ++j) M[rank][j] *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || M[r][c].is_zero()) continue;
            QI f = M[r][c];
            for (std::size_t j = c; j < cols; ++j) M[r][j] -= f * M[rank][j];
        }
        ++rank;
    }
    return rank;
}

} // namespace lax
