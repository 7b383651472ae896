#include "roots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace roots {

namespace {

constexpr int kMaxAberthIters = 500;

std::pair<cplx, cplx> horner2(const std::vector<cplx>& c, cplx z) {
    cplx p = 0.0, dp = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
    }
    return {p, dp};
}

// Evaluation-noise floor for Horner at z: once |p(z)| drops below this the
// value is indistinguishable from zero in double precision and iterating
// further just chases rounding jitter.
double horner_noise(const std::vector<cplx>& c, cplx z) {
    const double r = std::abs(z);
    double s = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * r + std::abs(*it);
    return 4.0 * c.size() * std::numeric_limits<double>::epsilon() * s;
}

cplx M_of(double alpha) { return std::polar(1.0, alpha / 2.0); }

}  // namespace

RootSet all_roots(const rmpoly::PolyC& p, double tol) {
    const auto& c = p.coeffs;
    int d = p.degree();
    if (d < 1) throw std::domain_error("all_roots: degree must be >= 1");

    double scale = 0.0;
    for (const cplx& ci : c) scale = std::max(scale, std::abs(ci));
    cplx lead = c.back();
    double radius = 0.0;
    for (int i = 0; i < d; ++i) radius = std::max(radius, std::abs(c[i] / lead));
    radius += 1.0;

    std::vector<cplx> z(d);
    for (int j = 0; j < d; ++j)
        z[j] = std::polar(radius, 2.0 * std::numbers::pi * j / d + 0.4);

    RootSet out;
    std::vector<bool> settled(d, false);
    int iter = 0;
    for (; iter < kMaxAberthIters; ++iter) {
        double max_move = 0.0;
        int active = 0;
        for (int j = 0; j < d; ++j) {
            if (settled[j]) continue;
            auto [pv, dpv] = horner2(c, z[j]);
            if (std::abs(pv) <= horner_noise(c, z[j])) {
                settled[j] = true;
                continue;
            }
            ++active;
            cplx w = (dpv != 0.0) ? pv / dpv : cplx{tol};
            cplx rep = 0.0;
            for (int k = 0; k < d; ++k)
                if (k != j) rep += 1.0 / (z[j] - z[k]);
            cplx denom = 1.0 - w * rep;
            cplx dz = (std::abs(denom) > 1e-300) ? w / denom : w;
            z[j] -= dz;
            max_move = std::max(max_move, std::abs(dz) / (1.0 + std::abs(z[j])));
        }
        if (active == 0 || max_move < tol) break;
    }
    if (iter == kMaxAberthIters) {
        double worst = 0.0;
        for (int j = 0; j < d; ++j) worst = std::max(worst, std::abs(horner2(c, z[j]).first));
        char msg[128];
        std::snprintf(msg, sizeof msg,
                      "all_roots: no convergence after %d iterations (max relative residual %.3e)",
                      kMaxAberthIters, worst / scale);
        throw SolverError(msg);
    }

    // Newton polish; Aberth repulsion has already separated the roots.
    for (int j = 0; j < d; ++j) {
        for (int it2 = 0; it2 < 8; ++it2) {
            auto [pv, dpv] = horner2(c, z[j]);
            if (dpv == 0.0 || std::abs(pv) <= horner_noise(c, z[j])) break;
            cplx dz = pv / dpv;
            z[j] -= dz;
            if (std::abs(dz) < tol * (1.0 + std::abs(z[j]))) break;
        }
    }

    out.roots = std::move(z);
    out.iterations = iter;
    for (const cplx& r : out.roots)
        out.max_residual = std::max(out.max_residual, std::abs(horner2(c, r).first) / scale);
    return out;
}

cplx refine(int n, double alpha, cplx seed, int iters) {
    cplx M = M_of(alpha), t = seed;
    for (int i = 0; i < iters; ++i) {
        auto [p, dp] = rmpoly::rm_eval(n, M, t);
        if (dp == 0.0) break;
        cplx dz = p / dp;
        t -= dz;
        if (std::abs(dz) < 1e-15 * (1.0 + std::abs(t))) break;
    }
    return t;
}

std::vector<cplx> rm_roots(int n, double alpha) {
    cplx M = M_of(alpha);
    RootSet rs = all_roots(rmpoly::build_rm_poly(n, M));
    for (cplx& r : rs.roots) r = refine(n, alpha, r);
    return rs.roots;
}

RootPath track(int n, double alpha_from, double alpha_to, cplx seed, BranchTag tag) {
    const double lo = std::min(alpha_from, alpha_to), hi = std::max(alpha_from, alpha_to);
    if (!(lo > 0.0) || hi > std::numbers::pi)
        throw std::domain_error("track: alpha range must lie in (0, pi]");
    {
        auto [p, dp] = rmpoly::rm_eval(n, M_of(alpha_from), seed);
        double scale = std::max(1.0, std::abs(dp));
        if (std::abs(p) > 1e-8 * scale)
            throw std::domain_error("track: seed is not a root at alpha_from");
    }

    RootPath path;
    path.n = n;
    path.tag = tag;
    path.samples.push_back({alpha_from, refine(n, alpha_from, seed)});
    path.min_step_used = std::numeric_limits<double>::infinity();
    if (alpha_from == alpha_to) {
        path.min_step_used = 0.0;
        return path;
    }

    const double dir = (alpha_to > alpha_from) ? 1.0 : -1.0;
    const double init_step = std::numbers::pi / 2000.0;
    const double min_step = 1e-7;
    double alpha = alpha_from;
    cplx t = path.samples.back().t;
    double step = init_step;

    while (dir * (alpha_to - alpha) > 1e-15) {
        double h = std::min(step, std::abs(alpha_to - alpha));
        double next_alpha = alpha + dir * h;
        std::vector<cplx> cand = rm_roots(n, next_alpha);

        // nearest and second-nearest candidates to the current position
        size_t best = 0;
        double d1 = std::numeric_limits<double>::infinity(), d2 = d1;
        for (size_t i = 0; i < cand.size(); ++i) {
            double d = std::abs(cand[i] - t);
            if (d < d1) {
                d2 = d1;
                d1 = d;
                best = i;
            } else if (d < d2) {
                d2 = d;
            }
        }
        bool ambiguous = d2 < 2.0 * d1;
        // no-swap bound: movement must stay under half the gap to other roots
        double min_gap = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < cand.size(); ++i)
            if (i != best) min_gap = std::min(min_gap, std::abs(cand[i] - cand[best]));
        bool swap_risk = cand.size() > 1 && !(d1 < 0.5 * min_gap);

        if ((ambiguous || swap_risk) && h > min_step) {
            step = std::max(h / 2.0, min_step);
            continue;
        }
        if (ambiguous || swap_risk)
            throw TrackingError("track: ambiguous root matching at minimum step", alpha);

        alpha = next_alpha;
        t = cand[best];
        path.samples.push_back({alpha, t});
        path.min_step_used = std::min(path.min_step_used, h);
        if (step < init_step) step *= 2.0;
    }
    return path;
}

}  // namespace roots
