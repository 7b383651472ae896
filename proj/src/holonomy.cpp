#include "holonomy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace holonomy {

namespace {

cplx ipow(cplx base, int e) {
    if (e < 0) return 1.0 / ipow(base, -e);
    cplx r = 1.0;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

Gen invert(Gen g) {
    switch (g) {
        case Gen::S: return Gen::S_inv;
        case Gen::S_inv: return Gen::S;
        case Gen::T: return Gen::T_inv;
        default: return Gen::T;
    }
}

Mat2 inverse_det1(const Mat2& m) { return {m.a22, -m.a12, -m.a21, m.a11}; }

}  // namespace

Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

cplx det(const Mat2& m) { return m.a11 * m.a22 - m.a12 * m.a21; }

GroupWord word_w(int n) {
    static const GroupWord base = {Gen::T, Gen::S_inv, Gen::T, Gen::S, Gen::T_inv, Gen::S};
    GroupWord period = base;
    if (n < 0) {
        std::reverse(period.begin(), period.end());
        for (Gen& g : period) g = invert(g);
    }
    GroupWord out;
    out.reserve(6 * size_t(std::abs(n)));
    for (int i = 0; i < std::abs(n); ++i) out.insert(out.end(), period.begin(), period.end());
    return out;
}

std::pair<Mat2, Mat2> rep_matrices(cplx M, cplx tv) {
    if (M == 0.0) throw std::invalid_argument("rep_matrices: M must be nonzero");
    cplx Minv = 1.0 / M;
    Mat2 rs{M, 1.0, 0.0, Minv};
    Mat2 rt{M, 0.0, 2.0 - M * M - Minv * Minv - tv, Minv};
    return {rs, rt};
}

Mat2 word_matrix(const GroupWord& word, cplx M, cplx tv) {
    auto [rs, rt] = rep_matrices(M, tv);
    Mat2 rs_inv = inverse_det1(rs), rt_inv = inverse_det1(rt);
    Mat2 acc = Mat2::identity();
    for (Gen g : word) {
        switch (g) {
            case Gen::S: acc = acc * rs; break;
            case Gen::S_inv: acc = acc * rs_inv; break;
            case Gen::T: acc = acc * rt; break;
            case Gen::T_inv: acc = acc * rt_inv; break;
        }
    }
    return acc;
}

double relation_residual(int n, cplx M, cplx tv) {
    if (n == 0) throw std::domain_error("relation_residual: n = 0 is excluded");
    auto [rs, rt] = rep_matrices(M, tv);
    Mat2 w = word_matrix(word_w(n), M, tv);
    Mat2 lhs = rs * w, rhs = w * rt;
    double r = 0.0;
    r = std::max(r, std::abs(lhs.a11 - rhs.a11));
    r = std::max(r, std::abs(lhs.a12 - rhs.a12));
    r = std::max(r, std::abs(lhs.a21 - rhs.a21));
    r = std::max(r, std::abs(lhs.a22 - rhs.a22));
    return r;
}

cplx longitude_matrix(int n, cplx M, cplx tv) {
    if (n == 0) throw std::domain_error("longitude_matrix: n = 0 is excluded");
    GroupWord w = word_w(n);
    GroupWord w_star(w.rbegin(), w.rend());
    Mat2 prod = word_matrix(w, M, tv) * word_matrix(w_star, M, tv);
    return ipow(M, -4 * n) * prod.a11;
}

}  // namespace holonomy
