#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace geometry {

using cplx = std::complex<double>;

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Cone-manifold parameters: knot index n and cone angle alpha, with the
/// meridian eigenvalue M = e^{i alpha/2} derived.
struct ConeParams {
    int n;
    double alpha;  // radians, (0, pi]

    cplx M() const { return std::polar(1.0, alpha / 2.0); }
};

/// Euclidean transition data for one knot: the collision angle alpha0, the
/// double point t* where the geometric conjugate pair meets the real axis,
/// the shared phase anchor phi0 = Arg L(t*, alpha0), and polished anchor
/// roots just off alpha0 on both sides.
struct GeometricData {
    int n = 0;
    double alpha0 = 0;
    double tstar = 0;
    double phi0 = 0;
    cplx geo;          // Im < 0 member of the hyperbolic pair at alpha0 - anchor_offset
    cplx hyp_pair[2];  // conjugate pair at alpha0 - anchor_offset
    cplx sph_pair[2];  // separating pair at alpha0 + anchor_offset

    static constexpr double anchor_offset = 1e-4;

    /// Geometric root at alpha < alpha0, continued from the anchor.
    cplx geometric_t(double alpha) const;
    /// The two spherical-side roots at alpha > alpha0, continued from the anchors.
    std::pair<cplx, cplx> spherical_pair(double alpha) const;
};

/// Collision angle of the geometric pair in the window [2pi/3 - 0.05, pi).
/// Candidates come from a scan for conjugate-pair collisions (the root set is
/// conjugation-closed on |M| = 1); each candidate is confirmed and refined by
/// a Newton solve of the real double-root system; the largest confirmed angle
/// is returned. Throws GeometryError when no collision lies in the window.
double find_alpha0(int n, double tol = 1e-10);

/// Full transition data: alpha0, t*, anchors on both sides, phase anchor.
GeometricData geometric_branch(int n);

/// Closed form L = -M^{-4n-2} (M^{-2} + tv) / (M^2 + tv).
cplx longitude_eigenvalue(int n, cplx M, cplx tv);

/// Schlaefli integrand at one angle: 2 Im log L on the geometric root below
/// alpha0, Im log L(t1) + Im log L(t2) above; branches continued from the
/// shared anchor phi0 at alpha0. At alpha = alpha0 the one-sided limit 2*phi0.
double beta_integrand(int n, double alpha, const GeometricData& gd);

/// beta at the intervals+1 Simpson nodes of [lo, alpha0] (ascending alpha;
/// last node is alpha0 itself).
std::vector<double> beta_grid_hyp(const GeometricData& gd, double lo, int intervals);

/// beta at the intervals+1 Simpson nodes of [alpha0, pi] (ascending alpha).
std::vector<double> beta_grid_sph(const GeometricData& gd, int intervals);

/// Cross-check quantity: integral of half the real translation length of the
/// longitude along the geometric branch, from alpha up to alpha0. Positive on
/// (0, alpha0), tends to 0 as alpha approaches alpha0.
double volume_oracle(int n, double alpha);

/// Same integral along an arbitrary root branch seeded at `seed` (used to
/// check that the geometric branch dominates all other Im <= 0 branches).
double branch_volume(int n, double alpha, cplx seed);

}  // namespace geometry
