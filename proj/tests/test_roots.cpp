#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "rmpoly.hpp"
#include "roots.hpp"

using cplx = std::complex<double>;
using namespace roots;

TEST_CASE("all_roots on a factored cubic") {
    // (z-1)(z-2i)(z+3)
    rmpoly::PolyC p({cplx(0.0, 6.0), cplx(-3.0, -4.0), cplx(2.0, -2.0), cplx(1.0)});
    auto rs = all_roots(p);
    REQUIRE(rs.roots.size() == 3);
    for (cplx want : {cplx(1.0), cplx(0.0, 2.0), cplx(-3.0)}) {
        double best = 1e9;
        for (cplx r : rs.roots) best = std::min(best, std::abs(r - want));
        CHECK(best < 1e-10);
    }
    CHECK(rs.max_residual < 1e-10);
}

TEST_CASE("Vieta sums on RM polynomials (polished roots)") {
    // Expanded coefficients grow like M^8 powers, so coefficient-Horner roots
    // alone lose digits at high degree; the value-recursion polish in rm_roots
    // is what keeps positions accurate enough for aggregate identities.
    const double alpha = 2.6;
    for (int n : {2, 5, -4, -7}) {
        const auto M = std::polar(1.0, alpha / 2.0);
        const auto p = rmpoly::build_rm_poly(n, M);
        const auto v = rm_roots(n, alpha);
        cplx sum = 0.0, prod = 1.0;
        for (cplx r : v) {
            sum += r;
            prod *= r;
        }
        const int d = p.degree();
        const cplx lead = p.coeffs[d];
        CHECK(std::abs(sum + p.coeffs[d - 1] / lead) < 1e-10 * (1.0 + std::abs(sum)));
        const cplx want = (d % 2 ? -1.0 : 1.0) * p.coeffs[0] / lead;
        CHECK(std::abs(prod - want) < 1e-10 * (1.0 + std::abs(prod)));
    }
}

TEST_CASE("rm_roots: counts, residuals, conjugation closure") {
    for (int n = -9; n <= 9; ++n) {
        if (n == 0) continue;
        for (double alpha : {0.7, 2.1, 2.95}) {
            const auto v = rm_roots(n, alpha);
            CHECK(static_cast<int>(v.size()) == (n >= 1 ? 3 * n : -(3 * n + 1)));
            const auto M = std::polar(1.0, alpha / 2.0);
            for (cplx r : v) {
                // polished residual in the value recursion
                CHECK(std::abs(rmpoly::rm_eval(n, M, r).first) < 1e-6);
                // the root set is closed under conjugation (real family underneath)
                double best = 1e9;
                for (cplx s : v) best = std::min(best, std::abs(s - std::conj(r)));
                CHECK(best < 1e-7);
            }
        }
    }
}

TEST_CASE("refine pulls a perturbed root back") {
    const auto v = rm_roots(3, 2.0);
    for (cplx r : v) {
        const cplx back = refine(3, 2.0, r + cplx(1e-6, -1e-6));
        CHECK(std::abs(back - r) < 1e-10);
    }
}

TEST_CASE("track: degenerate range returns a single sample") {
    const auto v = rm_roots(1, 2.0);
    const auto path = track(1, 2.0, 2.0, v.front());
    CHECK(path.samples.size() == 1);
    CHECK(std::abs(path.samples.front().t - v.front()) < 1e-12);
}

TEST_CASE("track round trip") {
    // continue a root up and back; it must return to the start
    cplx seed;
    for (cplx r : rm_roots(1, 2.0))
        if (r.imag() < -1e-3) seed = r;
    const auto fwd = track(1, 2.0, 2.2, seed);
    const cplx mid = fwd.samples.back().t;
    const auto bck = track(1, 2.2, 2.0, mid);
    CHECK(std::abs(bck.samples.back().t - seed) < 1e-8);
}

TEST_CASE("track rejects a non-root seed") {
    CHECK_THROWS_AS(track(1, 2.0, 2.2, cplx(5.0, 5.0)), std::domain_error);
}

TEST_CASE("track refuses to cross the collision blindly") {
    // at alpha0 the geometric pair merges; tracking through it must either
    // throw TrackingError or stay on a well-separated branch, never NaN
    cplx seed;
    for (cplx r : rm_roots(1, 2.35)) {
        if (r.imag() < -1e-3) seed = r;
    }
    try {
        const auto path = track(1, 2.35, 2.45, seed);
        for (const auto& s : path.samples) {
            CHECK(std::isfinite(s.t.real()));
            CHECK(std::isfinite(s.t.imag()));
        }
    } catch (const TrackingError& e) {
        CHECK(e.last_good_alpha >= 2.35);
        CHECK(e.last_good_alpha <= 2.45);
    }
}

TEST_CASE("all_roots rejects constants") {
    CHECK_THROWS_AS(all_roots(rmpoly::PolyC({cplx(2.0)})), std::domain_error);
}
