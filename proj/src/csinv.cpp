#include "csinv.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace csinv {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational Rational::mod_one() const {
    std::int64_t r = num % den;
    if (r < 0) r += den;
    return Rational(r, den);
}

double simpson(const std::function<double(double)>& f, double a, double b, const QuadratureSpec& spec) {
    const int n = spec.intervals;
    if (n < 2 || n % 2 != 0) throw NumericalError("simpson: intervals must be even and >= 2");
    const double h = (b - a) / n;
    double acc = 0.0;
    for (int j = 0; j <= n; ++j) {
        const double x = (j == n) ? b : a + j * h;
        const double v = f(x);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "simpson: non-finite sample at x=" << x;
            throw NumericalError(os.str());
        }
        const double w = (j == 0 || j == n) ? 1.0 : (j % 2 ? 4.0 : 2.0);
        acc += w * v;
    }
    return acc * h / 3.0;
}

double simpson_samples(const std::vector<double>& samples, double a, double b) {
    const int n = static_cast<int>(samples.size()) - 1;
    if (n < 2 || n % 2 != 0) throw NumericalError("simpson_samples: need an odd sample count >= 3");
    const double h = (b - a) / n;
    double acc = samples[0] + samples[n];
    for (int j = 1; j < n; ++j) acc += (j % 2 ? 4.0 : 2.0) * samples[j];
    return acc * h / 3.0;
}

Rational lens_cs(int n) {
    return Rational(4 * static_cast<std::int64_t>(n) + 4, 12 * static_cast<std::int64_t>(n) + 2).mod_one();
}

double reduce_mod(double raw, double m) {
    double r = raw - m * std::round(raw / m);
    if (r < 0.0) r += m;
    // Quadrature noise is ~1e-8; a representative within that of the window
    // edge is indistinguishable from 0 (mod m) and must be reported as 0,
    // never as ~m (the amphicheiral knot lands exactly on this boundary and
    // the side it falls on varies with the interval count).
    if (r < 1e-7 || m - r < 1e-7) r = 0.0;
    return r;
}

Engine::Engine(int n, QuadratureSpec spec) : n_(n), spec_(spec) {
    if (n == 0) throw std::domain_error("Engine: n must be nonzero");
    if (spec_.intervals < 2 || spec_.intervals % 2 != 0)
        throw NumericalError("Engine: intervals must be even and >= 2");
    gd_ = geometry::geometric_branch(n);
    const auto sph = geometry::beta_grid_sph(gd_, spec_.intervals);
    i_sph_ = simpson_samples(sph, gd_.alpha0, std::numbers::pi);
    const Rational lens = lens_cs(n);
    lens_half_ = lens.to_double() / 2.0;
}

double Engine::raw_value(double lo) const {
    const auto hyp = geometry::beta_grid_hyp(gd_, lo, spec_.intervals);
    const double i_hyp = simpson_samples(hyp, lo, gd_.alpha0);
    constexpr double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
    return lens_half_ + (i_hyp + i_sph_) / four_pi_sq;
}

CSValue Engine::orbifold(int k) const {
    if (k < 3) throw std::domain_error("orbifold: k must be >= 3");
    const double lo = 2.0 * std::numbers::pi / k;
    if (lo >= gd_.alpha0 - 1e-9) {
        std::ostringstream os;
        os << "cone angle 2pi/" << k << " is not below alpha0=" << gd_.alpha0
           << " for n=" << n_ << ": no hyperbolic structure";
        throw NonHyperbolicError(os.str());
    }
    const Rational m = (k % 2 == 0) ? Rational(1, k) : Rational(1, 2 * k);
    return {reduce_mod(raw_value(lo), m.to_double()), m};
}

CSValue Engine::covering(int k) const {
    const CSValue orb = orbifold(k);
    return {reduce_mod(k * orb.value, 1.0), Rational(1, 1)};
}

CSValue Engine::knot() const {
    return {reduce_mod(raw_value(0.0), 0.5), Rational(1, 2)};
}

CSValue orbifold_cs(int n, int k, QuadratureSpec spec) { return Engine(n, spec).orbifold(k); }
CSValue covering_cs(int n, int k, QuadratureSpec spec) { return Engine(n, spec).covering(k); }
CSValue knot_cs(int n, QuadratureSpec spec) { return Engine(n, spec).knot(); }

}  // namespace csinv
