#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "rmpoly.hpp"

namespace roots {

using cplx = std::complex<double>;

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TrackingError : std::runtime_error {
    double last_good_alpha;
    TrackingError(const std::string& msg, double alpha)
        : std::runtime_error(msg), last_good_alpha(alpha) {}
};

struct RootSet {
    std::vector<cplx> roots;   // size == degree of input
    int iterations = 0;        // simultaneous-solver iterations used
    double max_residual = 0;   // max |p(root)| / max|coeff| after polish
};

/// All complex roots by Aberth-Ehrlich simultaneous iteration.
/// Deterministic: initial guesses equispaced on the circle of radius
/// 1 + max|c_i / c_lead| with fixed phase offset 0.4 rad; at most 500
/// iterations, then coefficient-Horner Newton polish.
RootSet all_roots(const rmpoly::PolyC& p, double tol = 1e-12);

/// All roots of P_{2n}(., e^{i alpha/2}), Aberth-seeded then polished through
/// the value recursion (rmpoly::rm_eval) so positions stay accurate for large
/// |n| where expanded coefficients lose digits.
std::vector<cplx> rm_roots(int n, double alpha);

/// One root of P_{2n}(., e^{i alpha/2}) by Newton from a warm seed.
cplx refine(int n, double alpha, cplx seed, int iters = 30);

struct PathSample {
    double alpha;
    cplx t;
};

enum class BranchTag { geometric, conjugate_partner, other };

struct RootPath {
    int n = 0;
    std::vector<PathSample> samples;  // strictly monotone alpha
    BranchTag tag = BranchTag::other;
    double min_step_used = 0;
};

/// Follow the root component through alpha. Adaptive step halving (initial
/// pi/2000, minimum 1e-7) whenever nearest-root matching is ambiguous (a
/// second candidate within twice the step movement); each accepted sample is
/// checked against the no-swap bound |t_{j+1} - t_j| < 0.5 * (min distance
/// from t_j to the other roots).
RootPath track(int n, double alpha_from, double alpha_to, cplx seed,
               BranchTag tag = BranchTag::other);

}  // namespace roots
