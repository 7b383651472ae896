#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "geometry.hpp"
#include "holonomy.hpp"
#include "roots.hpp"

using cplx = std::complex<double>;
using namespace holonomy;

TEST_CASE("generator images") {
    auto [s, t] = rep_matrices(1.0, 0.0);
    CHECK(std::abs(s.a11 - 1.0) < 1e-15);
    CHECK(std::abs(s.a12 - 1.0) < 1e-15);
    CHECK(std::abs(t.a11 - 1.0) < 1e-15);
    CHECK(std::abs(t.a12) < 1e-15);
    CHECK(std::abs(t.a21) < 1e-15);  // tv = 0 makes the second generator trivial

    auto [s2, t2] = rep_matrices(1.0, -3.0);
    CHECK(std::abs(t2.a21 - 3.0) < 1e-15);
    CHECK(std::abs(det(s2) - 1.0) < 1e-15);
    CHECK(std::abs(det(t2) - 1.0) < 1e-15);
}

TEST_CASE("word length and inversion") {
    CHECK(word_w(1).size() == 6);
    CHECK(word_w(3).size() == 18);
    CHECK(word_w(-2).size() == 12);
    // w(-1) is the reversed inverse of w(1): their product is the identity
    const auto M = std::polar(1.0, 0.7);
    const cplx tv(0.3, -0.2);
    const auto prod = word_matrix(word_w(1), M, tv) * word_matrix(word_w(-1), M, tv);
    CHECK(std::abs(prod.a11 - 1.0) < 1e-12);
    CHECK(std::abs(prod.a12) < 1e-12);
    CHECK(std::abs(prod.a21) < 1e-12);
    CHECK(std::abs(prod.a22 - 1.0) < 1e-12);
}

TEST_CASE("relation residual vanishes exactly on representation points") {
    for (int n : {1, 2, -1, -3, 4}) {
        for (double alpha : {0.9, 2.0, 2.9}) {
            const auto M = std::polar(1.0, alpha / 2.0);
            for (const cplx& t : roots::rm_roots(n, alpha))
                CHECK(relation_residual(n, M, t) < 1e-9);
        }
    }
}

TEST_CASE("relation residual rejects non-roots") {
    const double alpha = 2.0;
    const auto M = std::polar(1.0, alpha / 2.0);
    CHECK(relation_residual(1, M, cplx(0.5, 0.5)) > 1e-3);
    CHECK(relation_residual(-2, M, cplx(-1.0, 0.25)) > 1e-3);
}

TEST_CASE("longitude is -1 at the parabolic point M=1") {
    for (int n : {1, -1, 2}) {
        const auto rs = roots::all_roots(rmpoly::build_rm_poly(n, 1.0));
        for (const cplx& t : rs.roots)
            CHECK(std::abs(longitude_matrix(n, 1.0, t) - cplx(-1.0)) < 1e-9);
    }
    // the closed form is -1 there for any tv, root or not
    CHECK(std::abs(geometry::longitude_eigenvalue(1, 1.0, cplx(0.3, 0.1)) - cplx(-1.0)) < 1e-14);
}

TEST_CASE("matrix longitude agrees with the closed form on roots") {
    double worst = 0.0;
    for (int n = -9; n <= 9; ++n) {
        if (n == 0) continue;
        for (double alpha : {0.8, 1.7, 2.6, 3.05}) {
            const auto M = std::polar(1.0, alpha / 2.0);
            for (const cplx& t : roots::rm_roots(n, alpha)) {
                const cplx closed = geometry::longitude_eigenvalue(n, M, t);
                const cplx matrix = longitude_matrix(n, M, t);
                worst = std::max(worst, std::abs(closed - matrix));
            }
        }
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("longitude eigenvalue lies on the unit circle for real roots") {
    // t real and |M| = 1 force |L| = 1 (the longitude is then a rotation)
    for (double alpha : {2.9, 3.1}) {
        for (const cplx& t : roots::rm_roots(1, alpha)) {
            if (std::abs(t.imag()) > 1e-9) continue;
            const auto M = std::polar(1.0, alpha / 2.0);
            CHECK(std::abs(std::abs(geometry::longitude_eigenvalue(1, M, t)) - 1.0) < 1e-10);
        }
    }
}
