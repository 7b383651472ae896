#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "csinv.hpp"

using namespace csinv;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("simpson exactness and convergence") {
    QuadratureSpec coarse{100};
    CHECK(simpson([](double) { return 2.5; }, 0.0, 3.0, coarse) == doctest::Approx(7.5).epsilon(1e-14));
    // Simpson is exact through cubics
    CHECK(simpson([](double x) { return x * x; }, 0.0, 1.0, coarse) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(std::abs(simpson([](double x) { return std::sin(x); }, 0.0, pi, {}) - 2.0) < 1e-12);
    CHECK_THROWS_AS(simpson([](double) { return 1.0; }, 0.0, 1.0, QuadratureSpec{3}), NumericalError);
    CHECK_THROWS_AS(simpson([](double x) { return 1.0 / x; }, 0.0, 1.0, coarse), NumericalError);
}

TEST_CASE("simpson on samples matches the functional form") {
    const int m = 64;
    std::vector<double> s(m + 1);
    for (int j = 0; j <= m; ++j) {
        const double x = 0.25 + (2.0 - 0.25) * j / m;
        s[j] = std::exp(-x) * std::cos(3.0 * x);
    }
    const double a = simpson_samples(s, 0.25, 2.0);
    const double b = simpson([](double x) { return std::exp(-x) * std::cos(3.0 * x); }, 0.25, 2.0,
                             QuadratureSpec{m});
    CHECK(a == doctest::Approx(b).epsilon(1e-15));
    CHECK_THROWS_AS(simpson_samples(std::vector<double>(4, 1.0), 0.0, 1.0), NumericalError);
}

TEST_CASE("rational arithmetic") {
    const Rational r(6, -8);
    CHECK(r.num == -3);
    CHECK(r.den == 4);
    CHECK(Rational(0, -10).num == 0);
    CHECK(Rational(0, -10).den == 1);
    CHECK(Rational(-3, 4).mod_one().num == 1);
    CHECK(Rational(-3, 4).mod_one().den == 4);
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("lens space constants") {
    CHECK(lens_cs(1).num == 4);
    CHECK(lens_cs(1).den == 7);
    CHECK(lens_cs(-2).num == 2);
    CHECK(lens_cs(-2).den == 11);
    CHECK(lens_cs(-1).num == 0);
    CHECK(lens_cs(-1).den == 1);
}

TEST_CASE("modular reduction") {
    CHECK(reduce_mod(0.7, 0.5) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(reduce_mod(-0.1, 0.5) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(reduce_mod(1.25, 1.0) == doctest::Approx(0.25).epsilon(1e-12));
    // representatives hugging either edge of the window collapse to zero
    CHECK(reduce_mod(0.5 - 1e-9, 0.5) == 0.0);
    CHECK(reduce_mod(-1e-9, 0.5) == 0.0);
    CHECK(reduce_mod(1e-9, 0.5) == 0.0);
}

TEST_CASE("orbifold values against the reference cells") {
    Engine e1(1);
    CHECK(std::abs(e1.orbifold(3).value - 0.0200137) < 5e-5);
    CHECK(e1.orbifold(3).modulus.num == 1);
    CHECK(e1.orbifold(3).modulus.den == 6);
    CHECK(std::abs(e1.orbifold(10).value - 0.0595395) < 5e-5);
    CHECK(e1.orbifold(10).modulus.den == 10);

    Engine em2(-2);
    CHECK(std::abs(em2.orbifold(4).value - 0.0141698) < 5e-5);
    CHECK(em2.orbifold(4).modulus.den == 4);
}

TEST_CASE("covering values and multiplicativity") {
    Engine e1(1);
    CHECK(std::abs(e1.covering(3).value - 0.0600411) < 5e-5);
    for (int k = 3; k <= 10; ++k) {
        const auto orb = e1.orbifold(k);
        const auto cov = e1.covering(k);
        const double m = orb.modulus.to_double();
        CHECK(orb.value >= 0.0);
        CHECK(orb.value < m);
        const double diff = reduce_mod(cov.value - k * orb.value, 1.0);
        CHECK(std::min(diff, 1.0 - diff) < 1e-10);
    }
}

TEST_CASE("knot complements") {
    CHECK(std::abs(Engine(1).knot().value - 0.346796) < 5e-5);
    CHECK(std::abs(Engine(-9).knot().value - 0.402076) < 5e-5);
    // amphicheiral: the invariant vanishes
    CHECK(std::abs(Engine(-1).knot().value) < 1e-5);
    CHECK(Engine(1).knot().modulus.den == 2);
}

TEST_CASE("non-hyperbolic cone angle") {
    CHECK_THROWS_AS(orbifold_cs(-1, 3), NonHyperbolicError);
    CHECK_THROWS_AS(Engine(-1).covering(3), NonHyperbolicError);
    // k=3 is fine for every other knot in range
    CHECK_NOTHROW(orbifold_cs(-2, 3, QuadratureSpec{2000}));
}

TEST_CASE("engine argument validation") {
    CHECK_THROWS_AS(Engine(0), std::domain_error);
    CHECK_THROWS_AS(Engine(1, QuadratureSpec{101}), NumericalError);
    CHECK_THROWS_AS(Engine(1, QuadratureSpec{2000}).orbifold(2), std::domain_error);
}

TEST_CASE("quadrature refinement leaves values put") {
    // doubling the intervals must not move a converged value
    const auto a = Engine(2, QuadratureSpec{10000}).orbifold(5).value;
    const auto b = Engine(2, QuadratureSpec{20000}).orbifold(5).value;
    CHECK(std::abs(a - b) < 1e-7);
}
