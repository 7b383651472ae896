#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "geometry.hpp"

namespace csinv {

struct NonHyperbolicError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact rational, always reduced, denominator positive.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d);
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    /// Representative in [0, 1).
    Rational mod_one() const;
};

/// A Chern-Simons value together with the modulus it is defined modulo.
/// `value` always lies in [0, modulus.to_double()).
struct CSValue {
    double value = 0;
    Rational modulus{1, 1};
};

struct QuadratureSpec {
    int intervals = 10000;  // must be even and >= 2
};

/// Composite Simpson rule for a callable on [a, b].
double simpson(const std::function<double(double)>& f, double a, double b, const QuadratureSpec& spec = {});

/// Composite Simpson rule on precomputed equispaced samples (size = intervals+1, odd).
double simpson_samples(const std::vector<double>& samples, double a, double b);

/// Chern-Simons invariant of the lens space surgered along the knot,
/// (4n+4)/(12n+2) reduced into [0, 1).
Rational lens_cs(int n);

/// Reduce raw into [0, m) with a tolerance collapse at the top end.
double reduce_mod(double raw, double m);

/// Computes the invariants for one knot index n, caching the branch data and
/// the spherical-side integral shared by every cone angle.
class Engine {
public:
    explicit Engine(int n, QuadratureSpec spec = {});

    int n() const { return n_; }
    double alpha0() const { return gd_.alpha0; }
    const geometry::GeometricData& branch() const { return gd_; }

    /// Cone orbifold with cone angle 2pi/k; defined mod 1/k (k even) or
    /// 1/(2k) (k odd). Throws NonHyperbolicError when 2pi/k >= alpha0.
    CSValue orbifold(int k) const;
    /// k-fold cyclic covering, defined mod 1.
    CSValue covering(int k) const;
    /// The knot complement itself (cone angle 0), defined mod 1/2.
    CSValue knot() const;

private:
    double raw_value(double lo) const;  // lens/2 + (I_hyp + I_sph)/(4 pi^2)

    int n_;
    QuadratureSpec spec_;
    geometry::GeometricData gd_;
    double i_sph_;      // integral of beta over [alpha0, pi]
    double lens_half_;  // lens_cs(n)/2 as a double
};

/// Convenience wrappers constructing a fresh Engine.
CSValue orbifold_cs(int n, int k, QuadratureSpec spec = {});
CSValue covering_cs(int n, int k, QuadratureSpec spec = {});
CSValue knot_cs(int n, QuadratureSpec spec = {});

}  // namespace csinv
