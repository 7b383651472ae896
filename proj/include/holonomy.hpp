#pragma once

#include <complex>
#include <vector>

namespace holonomy {

using cplx = std::complex<double>;

struct Mat2 {
    cplx a11, a12, a21, a22;

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

Mat2 operator*(const Mat2& a, const Mat2& b);
cplx det(const Mat2& m);

/// Group letters; S_inv/T_inv are the inverses of the two generators.
enum class Gen { S, S_inv, T, T_inv };

using GroupWord = std::vector<Gen>;

/// w = (t s^{-1} t s t^{-1} s)^n; for n < 0 the inverse word, expanded
/// literally (reversed letters, each inverted). Length 6|n|.
GroupWord word_w(int n);

/// rho(s) = [[M, 1], [0, 1/M]], rho(t) = [[M, 0], [2 - M^2 - M^{-2} - tv, 1/M]].
/// tv names the representation variable (the group generator is also "t").
std::pair<Mat2, Mat2> rep_matrices(cplx M, cplx tv);

/// Left-to-right product of the images of the letters; empty word -> identity.
Mat2 word_matrix(const GroupWord& word, cplx M, cplx tv);

/// Max-entry magnitude of rho(s) rho(w) - rho(w) rho(t); zero exactly when
/// (M, tv) defines a representation of the knot group.
double relation_residual(int n, cplx M, cplx tv);

/// The longitude eigenvalue from the matrix side:
/// M^{-4n} * [rho(w) rho(w*)]_{11}, with w* the letter-reversal of w.
cplx longitude_matrix(int n, cplx M, cplx tv);

}  // namespace holonomy
