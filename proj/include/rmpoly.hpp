#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace rmpoly {

using cplx = std::complex<double>;

/// Dense univariate polynomial over C, coefficients in ascending powers of t.
/// The leading coefficient is kept above a relative deflation threshold;
/// normalize() trims spurious high-order terms produced by cancellation.
struct PolyC {
    std::vector<cplx> coeffs;

    static constexpr double deflation_threshold = 1e-12;

    PolyC() = default;
    explicit PolyC(std::vector<cplx> c) : coeffs(std::move(c)) { normalize(); }

    void normalize();
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// The auxiliary cubic Q(t, M).
/// Ascending coefficients [2M^4, -M^8+2M^6-3M^4+2M^2-1, -2M^6+2M^4-2M^2, -M^4].
PolyC build_q_poly(cplx M);

/// P_{2n}(t, M) by the three-term recursion
///   P_{2n} = Q * P_{2(n-1)} - M^8 * P_{2(n-2)}   (upward, n >= 1)
/// and its mirror for n <= -1, iterated from the base polynomials P_{±2}.
/// The recursion seeds are P_0 = 1 on the upward side and P_0 = M^{-2} on the
/// downward side; these are the values consistent with the holonomy relation
/// oracle (every root of the result satisfies the group relation to < 1e-9).
/// Degree is 3n for n >= 1 and -(3n+1) for n <= -1.
PolyC build_rm_poly(int n, cplx M);

cplx eval_poly(const PolyC& p, cplx t);

PolyC poly_derivative(const PolyC& p);

/// (P_{2n}(t, M), dP_{2n}/dt) evaluated by running the recursion on values.
/// Expanded coefficients grow to ~1e10 in magnitude by |n| = 9, so Horner on
/// build_rm_poly output loses ~10 digits; this keeps full double accuracy and
/// is what root polishing and tracking use.
std::pair<cplx, cplx> rm_eval(int n, cplx M, cplx t);

}  // namespace rmpoly
