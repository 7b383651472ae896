#include "geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rmpoly.hpp"
#include "roots.hpp"

namespace geometry {
namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Substituting M^2 = e^{i alpha} into P_{2n} and factoring out a power of M
// leaves a monic real-coefficient family in t with c = 2 cos(alpha). Working
// in that family keeps the collision search entirely real: roots come in
// conjugate pairs and a pair can only merge on the real axis.
//
// Value recursion carrying (v, dv/dt, dv/dc, d2v/dt2, d2v/dtdc), enough for a
// Newton solve of the double-root system v = dv/dt = 0 in (t, alpha).
using Jet = std::array<double, 5>;

Jet preal(int n, double t, double c) {
    const double q = t * t * t + 2.0 * (c - 1.0) * t * t + (c - 1.0) * (c - 1.0) * t - 2.0;
    const double q_t = 3.0 * t * t + 4.0 * (c - 1.0) * t + (c - 1.0) * (c - 1.0);
    const double q_c = 2.0 * t * t + 2.0 * (c - 1.0) * t;
    const double q_tt = 6.0 * t + 4.0 * (c - 1.0);
    const double q_tc = 4.0 * t + 2.0 * (c - 1.0);

    auto step = [&](const Jet& v, const Jet& u) -> Jet {
        return {q * v[0] - u[0],
                q_t * v[0] + q * v[1] - u[1],
                q_c * v[0] + q * v[2] - u[2],
                q_tt * v[0] + 2.0 * q_t * v[1] + q * v[3] - u[3],
                q_tc * v[0] + q_t * v[2] + q_c * v[1] + q * v[4] - u[4]};
    };

    Jet prev, cur;
    int steps;
    if (n >= 1) {
        prev = {1.0, 0.0, 0.0, 0.0, 0.0};
        cur = {t * t * t + (2.0 * c - 1.0) * t * t + c * (c - 1.0) * t - 1.0,
               3.0 * t * t + 2.0 * (2.0 * c - 1.0) * t + c * (c - 1.0),
               2.0 * t * t + (2.0 * c - 1.0) * t,
               6.0 * t + 2.0 * (2.0 * c - 1.0),
               4.0 * t + 2.0 * c - 1.0};
        steps = n - 1;
    } else {
        prev = {-1.0, 0.0, 0.0, 0.0, 0.0};
        cur = {t * t + (c - 1.0) * t + 1.0, 2.0 * t + c - 1.0, t, 2.0, 1.0};
        steps = -n - 1;
    }
    for (int i = 0; i < steps; ++i) {
        Jet next = step(cur, prev);
        prev = cur;
        cur = next;
    }
    return cur;
}

struct Collision {
    double alpha0;
    double tstar;
};

// Newton on F(t, alpha) = (p, dp/dt) = 0 with c = 2 cos(alpha).
bool newton_double_root(int n, double& t, double& a, double tol) {
    for (int iter = 0; iter < 80; ++iter) {
        const double c = 2.0 * std::cos(a);
        const double dcda = -2.0 * std::sin(a);
        const Jet v = preal(n, t, c);
        const double j00 = v[1], j01 = v[2] * dcda;
        const double j10 = v[3], j11 = v[4] * dcda;
        const double det = j00 * j11 - j01 * j10;
        if (std::abs(det) < 1e-300) return false;
        const double dt = (v[0] * j11 - j01 * v[1]) / det;
        const double da = (j00 * v[1] - v[0] * j10) / det;
        t -= dt;
        a -= da;
        if (!std::isfinite(t) || !std::isfinite(a) || a <= 0.0 || a >= std::numbers::pi + 0.1)
            return false;
        if (std::abs(dt) + std::abs(da) < tol) return true;
    }
    return false;
}

Collision find_collision(int n, double tol) {
    const double w_lo = two_pi / 3.0 - 0.05;
    const double w_hi = std::numbers::pi - 1e-6;
    constexpr int scan_points = 400;

    std::vector<double> grid(scan_points);
    std::vector<int> real_count(scan_points);
    std::vector<std::vector<cplx>> upper(scan_points);
    for (int i = 0; i < scan_points; ++i) {
        grid[i] = w_lo + (w_hi - w_lo) * i / (scan_points - 1);
        auto rs = roots::rm_roots(n, grid[i]);
        int cnt = 0;
        for (const auto& r : rs) {
            if (std::abs(r.imag()) < 1e-6)
                ++cnt;
            else if (r.imag() > 0.0)
                upper[i].push_back(r);
        }
        real_count[i] = cnt;
    }

    const double conv = std::min(tol, 1e-13);
    std::vector<Collision> found;
    for (int i = 0; i + 1 < scan_points; ++i) {
        if (real_count[i + 1] < real_count[i] + 2) continue;
        // Seed with the conjugate pair closest to the axis on the complex side.
        const auto& ups = upper[i];
        if (ups.empty()) continue;
        auto seed = *std::min_element(ups.begin(), ups.end(), [](cplx a, cplx b) {
            return a.imag() < b.imag();
        });
        double t = seed.real();
        double a = 0.5 * (grid[i] + grid[i + 1]);
        if (!newton_double_root(n, t, a, conv)) continue;
        if (a < grid[i] - 0.01 || a > grid[i + 1] + 0.01) continue;  // escaped the bracket
        if (a < w_lo || a >= std::numbers::pi) continue;
        found.push_back({a, t});
    }
    if (found.empty()) {
        std::ostringstream os;
        os << "no conjugate-pair collision found for n=" << n << " in ["
           << w_lo << ", " << w_hi << "]";
        throw GeometryError(os.str());
    }
    return *std::max_element(found.begin(), found.end(), [](const Collision& a, const Collision& b) {
        return a.alpha0 < b.alpha0;
    });
}

double unwrap(double prev, double raw) {
    double d = raw - prev;
    d -= two_pi * std::round(d / two_pi);
    return prev + d;
}

cplx longitude_at(int n, double alpha, cplx tv) {
    return longitude_eigenvalue(n, std::polar(1.0, alpha / 2.0), tv);
}

// Continue a root lane from (a_from, t) to a_to, carrying the unwrapped
// longitude phase. Steps are capped so each warm Newton start stays well
// inside the basin of its root.
struct LaneState {
    double alpha;
    cplx t;
    double phi;
};

LaneState advance(int n, LaneState s, double a_to) {
    const double max_step = std::numbers::pi / 2000.0;
    while (s.alpha != a_to) {
        double next = a_to;
        if (std::abs(next - s.alpha) > max_step)
            next = s.alpha + std::copysign(max_step, next - s.alpha);
        cplx t = roots::refine(n, next, s.t);
        cplx L = longitude_at(n, next, t);
        if (std::abs(L) < 1e-12) {  // numerically at the L = 0 degeneracy; nudge off the node
            t = roots::refine(n, next + 1e-9, t);
            L = longitude_at(n, next + 1e-9, t);
        }
        s = {next, t, unwrap(s.phi, std::arg(L))};
    }
    return s;
}

LaneState lane_anchor(const GeometricData& gd, cplx root, double alpha) {
    return {alpha, root, unwrap(gd.phi0, std::arg(longitude_at(gd.n, alpha, root)))};
}

}  // namespace

cplx longitude_eigenvalue(int n, cplx M, cplx tv) {
    const cplx denom = M * M + tv;
    if (std::abs(denom) < 1e-12)
        throw GeometryError("longitude eigenvalue pole: tv = -M^2");
    cplx mpow = std::pow(M, -4 * n - 2);
    return -mpow * (1.0 / (M * M) + tv) / denom;
}

double find_alpha0(int n, double tol) {
    if (n == 0) throw GeometryError("n must be nonzero");
    return find_collision(n, tol).alpha0;
}

GeometricData geometric_branch(int n) {
    const Collision col = find_collision(n, 1e-10);
    GeometricData gd;
    gd.n = n;
    gd.alpha0 = col.alpha0;
    gd.tstar = col.tstar;

    auto pick_pair = [&](double alpha) -> std::pair<cplx, cplx> {
        auto v = roots::rm_roots(n, alpha);
        std::sort(v.begin(), v.end(), [&](cplx a, cplx b) {
            return std::abs(a - cplx(col.tstar)) < std::abs(b - cplx(col.tstar));
        });
        if (v.size() < 2) throw GeometryError("fewer than two roots near the double point");
        if (v.size() > 2 && std::abs(v[2] - cplx(col.tstar)) < 2.0 * std::abs(v[1] - cplx(col.tstar))) {
            std::ostringstream os;
            os << "ambiguous collision for n=" << n << " at alpha=" << alpha << ": candidates";
            for (int i = 0; i < 3; ++i) os << " (" << v[i].real() << "," << v[i].imag() << ")";
            throw GeometryError(os.str());
        }
        return {v[0], v[1]};
    };

    const double off = GeometricData::anchor_offset;
    auto [h0, h1] = pick_pair(col.alpha0 - off);
    gd.hyp_pair[0] = h0;
    gd.hyp_pair[1] = h1;
    gd.geo = (h0.imag() < 0.0) ? h0 : h1;
    if (!(gd.geo.imag() < 0.0))
        throw GeometryError("hyperbolic pair did not leave the real axis below alpha0");
    auto [s0, s1] = pick_pair(col.alpha0 + off);
    gd.sph_pair[0] = s0;
    gd.sph_pair[1] = s1;

    gd.phi0 = std::arg(longitude_at(n, col.alpha0, cplx(col.tstar, 0.0)));
    return gd;
}

cplx GeometricData::geometric_t(double alpha) const {
    if (alpha <= 0.0 || alpha > alpha0)
        throw GeometryError("geometric_t: alpha outside (0, alpha0]");
    if (alpha == alpha0) return cplx(tstar, 0.0);
    return advance(n, lane_anchor(*this, geo, alpha0 - anchor_offset), alpha).t;
}

std::pair<cplx, cplx> GeometricData::spherical_pair(double alpha) const {
    if (alpha < alpha0 || alpha > std::numbers::pi)
        throw GeometryError("spherical_pair: alpha outside [alpha0, pi]");
    if (alpha == alpha0) return {cplx(tstar, 0.0), cplx(tstar, 0.0)};
    return {advance(n, lane_anchor(*this, sph_pair[0], alpha0 + anchor_offset), alpha).t,
            advance(n, lane_anchor(*this, sph_pair[1], alpha0 + anchor_offset), alpha).t};
}

double beta_integrand(int n, double alpha, const GeometricData& gd) {
    if (n != gd.n) throw GeometryError("beta_integrand: n does not match branch data");
    if (alpha == gd.alpha0) return 2.0 * gd.phi0;
    if (alpha < gd.alpha0) {
        auto s = advance(n, lane_anchor(gd, gd.geo, gd.alpha0 - GeometricData::anchor_offset), alpha);
        return 2.0 * s.phi;
    }
    auto s1 = advance(n, lane_anchor(gd, gd.sph_pair[0], gd.alpha0 + GeometricData::anchor_offset), alpha);
    auto s2 = advance(n, lane_anchor(gd, gd.sph_pair[1], gd.alpha0 + GeometricData::anchor_offset), alpha);
    return s1.phi + s2.phi;
}

std::vector<double> beta_grid_hyp(const GeometricData& gd, double lo, int intervals) {
    if (!(lo >= 0.0 && lo < gd.alpha0)) throw GeometryError("beta_grid_hyp: lo outside [0, alpha0)");
    if (intervals < 2) throw GeometryError("beta_grid_hyp: need at least 2 intervals");
    std::vector<double> beta(intervals + 1);
    beta[intervals] = 2.0 * gd.phi0;
    LaneState s = lane_anchor(gd, gd.geo, gd.alpha0 - GeometricData::anchor_offset);
    const double h = (gd.alpha0 - lo) / intervals;
    for (int j = 1; j <= intervals; ++j) {
        s = advance(gd.n, s, gd.alpha0 - j * h);
        beta[intervals - j] = 2.0 * s.phi;
    }
    return beta;
}

std::vector<double> beta_grid_sph(const GeometricData& gd, int intervals) {
    if (intervals < 2) throw GeometryError("beta_grid_sph: need at least 2 intervals");
    std::vector<double> beta(intervals + 1);
    beta[0] = 2.0 * gd.phi0;
    LaneState s1 = lane_anchor(gd, gd.sph_pair[0], gd.alpha0 + GeometricData::anchor_offset);
    LaneState s2 = lane_anchor(gd, gd.sph_pair[1], gd.alpha0 + GeometricData::anchor_offset);
    const double h = (std::numbers::pi - gd.alpha0) / intervals;
    for (int j = 1; j <= intervals; ++j) {
        const double a = (j == intervals) ? std::numbers::pi : gd.alpha0 + j * h;
        s1 = advance(gd.n, s1, a);
        s2 = advance(gd.n, s2, a);
        beta[j] = s1.phi + s2.phi;
    }
    return beta;
}

double branch_volume(int n, double alpha, cplx seed) {
    const double alpha0 = find_alpha0(n);
    if (!(alpha > 0.0 && alpha < alpha0))
        throw GeometryError("branch_volume: alpha outside (0, alpha0)");
    // Integrand |log |L|| has a sqrt cusp at alpha0; stop just short of it
    // (the omitted sliver is O(1e-12)) and use a fine fixed grid.
    const double hi = alpha0 - 1e-8;
    constexpr int intervals = 20000;
    const double h = (hi - alpha) / intervals;
    LaneState s{alpha, roots::refine(n, alpha, seed), 0.0};
    double acc = 0.0;
    double prev_val = std::abs(std::log(std::abs(longitude_at(n, alpha, s.t))));
    for (int j = 1; j <= intervals; ++j) {
        s = advance(n, s, alpha + j * h);
        const double val = std::abs(std::log(std::abs(longitude_at(n, s.alpha, s.t))));
        acc += 0.5 * h * (prev_val + val);
        prev_val = val;
    }
    return acc;
}

double volume_oracle(int n, double alpha) {
    GeometricData gd = geometric_branch(n);
    if (!(alpha > 0.0 && alpha < gd.alpha0))
        throw GeometryError("volume_oracle: alpha outside (0, alpha0)");
    return branch_volume(n, alpha, gd.geometric_t(alpha));
}

}  // namespace geometry
