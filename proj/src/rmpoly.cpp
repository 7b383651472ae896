#include "rmpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace rmpoly {

namespace {

cplx ipow(cplx base, int e) {
    if (e < 0) return 1.0 / ipow(base, -e);
    cplx r = 1.0;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

std::vector<cplx> convolve(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    std::vector<cplx> out(a.size() + b.size() - 1, cplx{0.0});
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

// base polynomials, ascending in t
std::vector<cplx> p2_coeffs(cplx M) {
    cplx M2 = M * M, M4 = M2 * M2, M6 = M4 * M2, M8 = M4 * M4;
    return {M4, -M8 + M6 - 2.0 * M4 + M2 - 1.0, -2.0 * M6 + M4 - 2.0 * M2, -M4};
}

std::vector<cplx> pm2_coeffs(cplx M) {
    cplx M2 = M * M, M4 = M2 * M2;
    return {M2, M4 - M2 + 1.0, M2};
}

}  // namespace

void PolyC::normalize() {
    if (coeffs.empty()) return;
    double scale = 0.0;
    for (const cplx& c : coeffs) scale = std::max(scale, std::abs(c));
    size_t last = 0;
    for (size_t i = 0; i < coeffs.size(); ++i)
        if (std::abs(coeffs[i]) > deflation_threshold * scale) last = i;
    coeffs.resize(last + 1);
}

PolyC build_q_poly(cplx M) {
    if (M == 0.0) throw std::invalid_argument("build_q_poly: M must be nonzero");
    cplx M2 = M * M, M4 = M2 * M2, M6 = M4 * M2, M8 = M4 * M4;
    return PolyC{{2.0 * M4, -M8 + 2.0 * M6 - 3.0 * M4 + 2.0 * M2 - 1.0,
                  -2.0 * M6 + 2.0 * M4 - 2.0 * M2, -M4}};
}

PolyC build_rm_poly(int n, cplx M) {
    if (n == 0) throw std::domain_error("build_rm_poly: n = 0 is excluded (knot not hyperbolic)");
    if (M == 0.0) throw std::invalid_argument("build_rm_poly: M must be nonzero");
    cplx M2 = M * M, M8 = ipow(M, 8);
    std::vector<cplx> q = build_q_poly(M).coeffs;
    std::vector<cplx> prev, cur;
    int steps;
    if (n >= 1) {
        prev = {cplx{1.0}};  // P_0, upward seed
        cur = p2_coeffs(M);
        steps = n - 1;
    } else {
        prev = {1.0 / M2};  // P_0, downward seed
        cur = pm2_coeffs(M);
        steps = -n - 1;
    }
    for (int i = 0; i < steps; ++i) {
        std::vector<cplx> next = convolve(q, cur);
        if (next.size() < prev.size()) next.resize(prev.size(), cplx{0.0});
        for (size_t j = 0; j < prev.size(); ++j) next[j] -= M8 * prev[j];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return PolyC{std::move(cur)};
}

cplx eval_poly(const PolyC& p, cplx t) {
    cplx acc = 0.0;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * t + *it;
    return acc;
}

PolyC poly_derivative(const PolyC& p) {
    if (p.coeffs.size() <= 1) return PolyC{{cplx{0.0}}};
    std::vector<cplx> d(p.coeffs.size() - 1);
    for (size_t i = 1; i < p.coeffs.size(); ++i) d[i - 1] = double(i) * p.coeffs[i];
    PolyC out;
    out.coeffs = std::move(d);  // keep trailing terms: derivative of a valid PolyC needs no trim
    return out;
}

std::pair<cplx, cplx> rm_eval(int n, cplx M, cplx t) {
    if (n == 0) throw std::domain_error("rm_eval: n = 0 is excluded");
    if (M == 0.0) throw std::invalid_argument("rm_eval: M must be nonzero");
    cplx M2 = M * M, M8 = ipow(M, 8);

    const std::vector<cplx> qc = build_q_poly(M).coeffs;
    cplx q = ((qc[3] * t + qc[2]) * t + qc[1]) * t + qc[0];
    cplx dq = (3.0 * qc[3] * t + 2.0 * qc[2]) * t + qc[1];

    cplx v_prev, dv_prev, v, dv;
    int steps;
    if (n >= 1) {
        v_prev = 1.0;
        dv_prev = 0.0;
        const std::vector<cplx> c = p2_coeffs(M);
        v = ((c[3] * t + c[2]) * t + c[1]) * t + c[0];
        dv = (3.0 * c[3] * t + 2.0 * c[2]) * t + c[1];
        steps = n - 1;
    } else {
        v_prev = 1.0 / M2;
        dv_prev = 0.0;
        const std::vector<cplx> c = pm2_coeffs(M);
        v = (c[2] * t + c[1]) * t + c[0];
        dv = 2.0 * c[2] * t + c[1];
        steps = -n - 1;
    }
    for (int i = 0; i < steps; ++i) {
        cplx v_next = q * v - M8 * v_prev;
        cplx dv_next = dq * v + q * dv - M8 * dv_prev;
        v_prev = v;
        dv_prev = dv;
        v = v_next;
        dv = dv_next;
    }
    return {v, dv};
}

}  // namespace rmpoly
