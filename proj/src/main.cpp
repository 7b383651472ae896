// conecs: Chern-Simons invariants of the cyclic two-bridge cone-manifolds
// X_{2n}(alpha), their orbifolds and cyclic coverings, and the underlying
// knots. Subcommands mirror the reference tables; see README.
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <future>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "csinv.hpp"
#include "geometry.hpp"
#include "holonomy.hpp"
#include "rmpoly.hpp"
#include "roots.hpp"

namespace {

using nlohmann::json;

constexpr int exit_usage = 2;
constexpr int exit_nonhyperbolic = 3;
constexpr int exit_numerical = 4;

std::string num(double v, int prec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    return buf;
}

double jnum(double v, int prec) { return std::stod(num(v, prec)); }

struct Options {
    int n = 0;
    int k = 0;
    int intervals = 10000;
    int precision = 6;
    int jobs = 1;
    std::string format = "text";
};

struct Row {
    int n = 0;
    std::optional<int> k;
    double alpha0 = 0;
    double cs = 0;
    csinv::Rational modulus;
    std::optional<double> covering;
    std::string error;  // non-empty: cell failed
};

json row_json(const Row& r, int prec) {
    json j;
    j["n"] = r.n;
    j["k"] = r.k ? json(*r.k) : json(nullptr);
    if (!r.error.empty()) {
        j["error"] = r.error;
        return j;
    }
    j["alpha0"] = jnum(r.alpha0, prec);
    j["cs"] = jnum(r.cs, prec);
    j["modulus_num"] = r.modulus.num;
    j["modulus_den"] = r.modulus.den;
    j["covering_cs"] = r.covering ? json(jnum(*r.covering, prec)) : json(nullptr);
    return j;
}

std::string row_csv(const Row& r, int prec) {
    std::string s = std::to_string(r.n) + ",";
    s += r.k ? std::to_string(*r.k) : "";
    if (!r.error.empty()) return s + ",,,,,error: " + r.error;
    s += "," + num(r.alpha0, prec) + "," + num(r.cs, prec) + ",";
    s += std::to_string(r.modulus.num) + "," + std::to_string(r.modulus.den) + ",";
    if (r.covering) s += num(*r.covering, prec);
    return s;
}

constexpr const char* csv_header = "n,k,alpha0,cs,modulus_num,modulus_den,covering_cs";

void print_rows(const std::vector<Row>& rows, const Options& opt, const std::string& block_prefix) {
    if (opt.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(row_json(r, opt.precision));
        std::cout << arr.dump(2) << "\n";
        return;
    }
    if (opt.format == "csv") {
        std::cout << csv_header << "\n";
        for (const auto& r : rows) std::cout << row_csv(r, opt.precision) << "\n";
        return;
    }
    int last_n = 0;
    for (const auto& r : rows) {
        if (r.n != last_n) {
            last_n = r.n;
            std::cout << block_prefix << "_" << 2 * r.n << "  (alpha0 = "
                      << num(r.alpha0, opt.precision) << ")\n";
        }
        if (!r.error.empty()) {
            std::cout << "  k=" << (r.k ? std::to_string(*r.k) : "-") << "  error: " << r.error << "\n";
            continue;
        }
        std::cout << "  k=" << (r.k ? std::to_string(*r.k) : "-") << "  cs=" << num(r.cs, opt.precision)
                  << " (mod " << r.modulus.num << "/" << r.modulus.den << ")";
        if (r.covering) std::cout << "  covering=" << num(*r.covering, opt.precision);
        std::cout << "\n";
    }
}

std::vector<Row> block_rows(int n, const Options& opt) {
    std::vector<Row> rows;
    csinv::Engine eng(n, {opt.intervals});
    for (int k = 3; k <= 10; ++k) {
        Row r;
        r.n = n;
        r.k = k;
        r.alpha0 = eng.alpha0();
        try {
            const auto orb = eng.orbifold(k);
            const auto cov = eng.covering(k);
            r.cs = orb.value;
            r.modulus = orb.modulus;
            r.covering = cov.value;
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        rows.push_back(r);
    }
    return rows;
}

std::vector<Row> gather_blocks(const std::vector<int>& ns, const Options& opt, int& warnings) {
    std::vector<std::future<std::vector<Row>>> futs;
    const int jobs = std::max(1, opt.jobs);
    std::vector<std::vector<Row>> out(ns.size());
    for (std::size_t base = 0; base < ns.size(); base += jobs) {
        const std::size_t hi = std::min(ns.size(), base + jobs);
        futs.clear();
        for (std::size_t i = base; i < hi; ++i)
            futs.push_back(std::async(std::launch::async, block_rows, ns[i], std::cref(opt)));
        for (std::size_t i = base; i < hi; ++i) out[i] = futs[i - base].get();
    }
    std::vector<Row> rows;
    for (auto& blk : out)
        for (auto& r : blk) {
            if (!r.error.empty()) ++warnings;
            rows.push_back(std::move(r));
        }
    return rows;
}

int cmd_table(const std::string& which, const Options& opt) {
    int warnings = 0;
    if (which == "1-1" || which == "1-2") {
        std::vector<int> ns;
        if (which == "1-1")
            for (int n = 1; n <= 9; ++n) ns.push_back(n);
        else
            for (int n = -2; n >= -9; --n) ns.push_back(n);
        const auto rows = gather_blocks(ns, opt, warnings);
        print_rows(rows, opt, which == "1-1" ? "X" : "T");
        if (warnings) std::cerr << warnings << " cell(s) failed\n";
        return 0;
    }
    // Table 2: one row per knot, positive block then negative block.
    std::vector<int> ns;
    for (int n = 1; n <= 9; ++n) ns.push_back(n);
    for (int n = -1; n >= -9; --n) ns.push_back(n);
    struct KnotRow {
        int n;
        double alpha0 = 0, cs = 0;
        std::string error;
    };
    const int jobs = std::max(1, opt.jobs);
    std::vector<KnotRow> rows(ns.size());
    auto one = [&](int n) {
        KnotRow r{n};
        try {
            csinv::Engine eng(n, {opt.intervals});
            r.alpha0 = eng.alpha0();
            r.cs = eng.knot().value;
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        return r;
    };
    for (std::size_t base = 0; base < ns.size(); base += jobs) {
        const std::size_t hi = std::min(ns.size(), base + jobs);
        std::vector<std::future<KnotRow>> futs;
        for (std::size_t i = base; i < hi; ++i)
            futs.push_back(std::async(std::launch::async, one, ns[i]));
        for (std::size_t i = base; i < hi; ++i) rows[i] = futs[i - base].get();
    }
    for (const auto& r : rows)
        if (!r.error.empty()) ++warnings;
    if (opt.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            json j;
            j["n"] = r.n;
            j["k"] = nullptr;
            if (!r.error.empty()) {
                j["error"] = r.error;
            } else {
                j["alpha0"] = jnum(r.alpha0, opt.precision);
                j["cs"] = jnum(r.cs, opt.precision);
                j["modulus_num"] = 1;
                j["modulus_den"] = 2;
                j["covering_cs"] = nullptr;
            }
            arr.push_back(j);
        }
        std::cout << arr.dump(2) << "\n";
    } else if (opt.format == "csv") {
        std::cout << "2n,alpha0,cs\n";
        for (const auto& r : rows) {
            if (!r.error.empty())
                std::cout << 2 * r.n << ",,error: " << r.error << "\n";
            else
                std::cout << 2 * r.n << "," << num(r.alpha0, opt.precision) << ","
                          << num(r.cs, opt.precision) << "\n";
        }
    } else {
        for (const auto& r : rows) {
            if (!r.error.empty()) {
                std::cout << "2n=" << 2 * r.n << "  error: " << r.error << "\n";
                continue;
            }
            std::cout << "2n=" << 2 * r.n << "  alpha0=" << num(r.alpha0, opt.precision)
                      << "  cs=" << num(r.cs, opt.precision) << " (mod 1/2)\n";
        }
    }
    if (warnings) std::cerr << warnings << " row(s) failed\n";
    return 0;
}

// ---- verify ---------------------------------------------------------------

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

CheckResult check_relation_residual(const std::vector<int>& ns, int samples, double perturb) {
    double worst = 0;
    for (int n : ns) {
        for (int s = 0; s < samples; ++s) {
            const double alpha = 0.3 + (std::numbers::pi - 0.4) * s / std::max(1, samples - 1);
            const auto M = std::polar(1.0, alpha / 2.0);
            std::vector<std::complex<double>> ts;
            if (perturb == 0.0) {
                ts = roots::rm_roots(n, alpha);
            } else {
                auto poly = rmpoly::build_rm_poly(n, M);
                auto& c = poly.coeffs[poly.coeffs.size() / 2];
                c += perturb * (std::abs(c) > 1.0 ? std::abs(c) : 1.0);
                ts = roots::all_roots(poly).roots;
            }
            for (const auto& t : ts)
                worst = std::max(worst, holonomy::relation_residual(n, M, t));
        }
    }
    return {"relation-residual", worst < 1e-9, "max " + num(worst, 3)};
}

CheckResult check_longitude(const std::vector<int>& ns, int samples) {
    double worst = 0;
    for (int n : ns) {
        for (int s = 0; s < samples; ++s) {
            const double alpha = 0.3 + (std::numbers::pi - 0.4) * s / std::max(1, samples - 1);
            const auto M = std::polar(1.0, alpha / 2.0);
            const auto rs = roots::rm_roots(n, alpha);
            for (const auto& t : rs) {
                const auto closed = geometry::longitude_eigenvalue(n, M, t);
                const auto matrix = holonomy::longitude_matrix(n, M, t);
                worst = std::max(worst, std::abs(closed - matrix));
            }
        }
    }
    return {"longitude-closed-form", worst < 1e-9, "max " + num(worst, 3)};
}

double eval_abs(const rmpoly::PolyC& p, double r) {
    double s = 0.0;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) s = s * r + std::abs(*it);
    return s;
}

CheckResult check_recursion(const std::vector<int>& ns) {
    std::mt19937 rng(20240613);
    std::uniform_real_distribution<double> angle(0.1, std::numbers::pi);
    std::uniform_real_distribution<double> box(-2.0, 2.0);
    double worst = 0;
    for (int n : ns) {
        if (std::abs(n) < 3) continue;
        const int m = n > 0 ? n - 1 : n + 1;
        const int mm = n > 0 ? n - 2 : n + 2;
        for (int s = 0; s < 16; ++s) {
            const auto M = std::polar(1.0, angle(rng) / 2.0);
            const std::complex<double> t(box(rng), box(rng));
            const auto pq = rmpoly::build_q_poly(M);
            const auto pn = rmpoly::build_rm_poly(n, M);
            const auto pm = rmpoly::build_rm_poly(m, M);
            const auto pmm = rmpoly::build_rm_poly(mm, M);
            const auto lhs = rmpoly::eval_poly(pn, t);
            const auto a = rmpoly::eval_poly(pq, t) * rmpoly::eval_poly(pm, t);
            const auto b = std::pow(M, 8) * rmpoly::eval_poly(pmm, t);
            const auto direct = rmpoly::rm_eval(n, M, t).first;
            // Coefficients reach ~1e10 by |n| = 9, so evaluated values cancel
            // far below the Horner magnitude sum; that sum is the only scale
            // against which the identity can be checked in doubles.
            const double r = std::abs(t);
            const double scale = eval_abs(pq, r) * eval_abs(pm, r) + eval_abs(pmm, r) + eval_abs(pn, r);
            worst = std::max(worst, std::abs(lhs - (a - b)) / scale);
            worst = std::max(worst, std::abs(direct - lhs) / scale);
        }
    }
    return {"recursion-consistency", worst < 1e-10, "max rel " + num(worst, 3)};
}

CheckResult check_modulus_law(const std::vector<std::pair<int, int>>& cells, int intervals) {
    double worst_mult = 0;
    bool bounds_ok = true;
    for (auto [n, k] : cells) {
        csinv::Engine eng(n, {intervals});
        const auto orb = eng.orbifold(k);
        const auto cov = eng.covering(k);
        const double m = orb.modulus.to_double();
        if (!(orb.value >= 0.0 && orb.value < m)) bounds_ok = false;
        const double diff = csinv::reduce_mod(cov.value - k * orb.value, 1.0);
        worst_mult = std::max(worst_mult, std::min(diff, 1.0 - diff));
    }
    const bool pass = bounds_ok && worst_mult < 1e-10;
    return {"modulus-law", pass, bounds_ok ? "max mult residual " + num(worst_mult, 3) : "bound violated"};
}

CheckResult check_alpha0_window(const std::vector<int>& ns) {
    const double lo = 2.0 * std::numbers::pi / 3.0 - 1e-6;
    bool ok = true;
    for (int n : ns) {
        const double a0 = geometry::find_alpha0(n);
        if (!(a0 >= lo && a0 < std::numbers::pi)) ok = false;
    }
    return {"alpha0-window", ok, ok ? "all in [2pi/3, pi)" : "out of window"};
}

int cmd_verify(bool quick, double perturb, int intervals) {
    std::vector<int> ns;
    if (quick)
        ns = {1, -1, 2, -2};
    else
        for (int n = -9; n <= 9; ++n)
            if (n != 0) ns.push_back(n);
    const int samples = quick ? 5 : 20;
    std::vector<std::pair<int, int>> cells = quick
        ? std::vector<std::pair<int, int>>{{1, 3}, {-2, 4}}
        : std::vector<std::pair<int, int>>{{1, 3}, {1, 10}, {-2, 4}, {3, 5}, {-5, 7}};

    std::vector<CheckResult> results;
    results.push_back(check_relation_residual(ns, samples, perturb));
    results.push_back(check_longitude(ns, samples));
    results.push_back(check_recursion(ns));
    results.push_back(check_modulus_law(cells, quick ? 2000 : intervals));
    results.push_back(check_alpha0_window(quick ? std::vector<int>{1, -1} : ns));

    int failed = 0;
    for (const auto& r : results) {
        std::cout << "check " << r.name << ": " << (r.pass ? "PASS" : "FAIL") << " (" << r.detail
                  << ")\n";
        if (!r.pass) ++failed;
    }
    std::cout << (results.size() - failed) << "/" << results.size() << " checks passed\n";
    return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chern-Simons invariants of two-bridge cone-manifolds, orbifolds and coverings"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool with_k) {
        sub->add_option("-n", opt.n, "knot index n (half the even Conway parameter, nonzero)")
            ->required();
        if (with_k) sub->add_option("-k", opt.k, "cone order k >= 3")->required();
        sub->add_option("--intervals", opt.intervals, "Simpson intervals per segment (even)");
        sub->add_option("--precision", opt.precision, "significant digits printed");
        sub->add_option("--format", opt.format, "output format: text, csv or json")
            ->check(CLI::IsMember({"text", "csv", "json"}));
    };

    auto* c_alpha0 = app.add_subcommand("alpha0", "Euclidean transition angle alpha0");
    add_common(c_alpha0, false);
    auto* c_cs = app.add_subcommand("cs", "orbifold Chern-Simons invariant of X_{2n}(2pi/k)");
    add_common(c_cs, true);
    auto* c_cover = app.add_subcommand("cover", "Chern-Simons invariant of the k-fold cyclic covering");
    add_common(c_cover, true);
    auto* c_knot = app.add_subcommand("knot", "Chern-Simons invariant of the knot itself");
    add_common(c_knot, false);

    std::string which;
    auto* c_table = app.add_subcommand("table", "emit a full reference table");
    c_table->add_option("which", which, "table id: 1-1, 1-2 or 2")
        ->required()
        ->check(CLI::IsMember({"1-1", "1-2", "2"}));
    c_table->add_option("--intervals", opt.intervals, "Simpson intervals per segment (even)");
    c_table->add_option("--precision", opt.precision, "significant digits printed");
    c_table->add_option("--format", opt.format, "output format: text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    c_table->add_option("--jobs", opt.jobs, "parallel workers for independent blocks");

    bool quick = false;
    double perturb = 0.0;
    auto* c_verify = app.add_subcommand("verify", "run the internal consistency suite");
    c_verify->add_flag("--quick", quick, "small n subset, coarse quadrature");
    c_verify->add_option("--perturb", perturb,
                         "test hook: perturb one polynomial coefficient by this factor");
    c_verify->add_option("--intervals", opt.intervals, "Simpson intervals per segment (even)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    if ((c_alpha0->parsed() || c_cs->parsed() || c_cover->parsed() || c_knot->parsed()) && opt.n == 0) {
        std::cerr << "error: n must be nonzero\n";
        return exit_usage;
    }
    if (opt.intervals < 2 || opt.intervals % 2 != 0) {
        std::cerr << "error: --intervals must be even and >= 2\n";
        return exit_usage;
    }
    if ((c_cs->parsed() || c_cover->parsed()) && opt.k < 3) {
        std::cerr << "error: k must be >= 3\n";
        return exit_usage;
    }

    try {
        if (c_alpha0->parsed()) {
            const double a0 = geometry::find_alpha0(opt.n);
            if (opt.format == "json") {
                json j{{"n", opt.n}, {"alpha0", jnum(a0, opt.precision)}};
                std::cout << j.dump() << "\n";
            } else if (opt.format == "csv") {
                std::cout << "n,alpha0\n" << opt.n << "," << num(a0, opt.precision) << "\n";
            } else {
                std::cout << num(a0, opt.precision) << "\n";
            }
            return 0;
        }
        if (c_cs->parsed() || c_cover->parsed()) {
            csinv::Engine eng(opt.n, {opt.intervals});
            Row r;
            r.n = opt.n;
            r.k = opt.k;
            r.alpha0 = eng.alpha0();
            const auto orb = eng.orbifold(opt.k);
            r.cs = orb.value;
            r.modulus = orb.modulus;
            if (c_cover->parsed()) {
                const auto cov = eng.covering(opt.k);
                r.covering = cov.value;
            }
            if (opt.format == "json") {
                std::cout << row_json(r, opt.precision).dump() << "\n";
            } else if (opt.format == "csv") {
                std::cout << csv_header << "\n" << row_csv(r, opt.precision) << "\n";
            } else if (c_cover->parsed()) {
                std::cout << num(*r.covering, opt.precision) << " (mod 1)\n";
            } else {
                std::cout << num(r.cs, opt.precision) << " (mod " << r.modulus.num << "/"
                          << r.modulus.den << ")\n";
            }
            return 0;
        }
        if (c_knot->parsed()) {
            csinv::Engine eng(opt.n, {opt.intervals});
            const auto v = eng.knot();
            Row r;
            r.n = opt.n;
            r.alpha0 = eng.alpha0();
            r.cs = v.value;
            r.modulus = v.modulus;
            if (opt.format == "json") {
                std::cout << row_json(r, opt.precision).dump() << "\n";
            } else if (opt.format == "csv") {
                std::cout << csv_header << "\n" << row_csv(r, opt.precision) << "\n";
            } else {
                std::cout << num(r.cs, opt.precision) << " (mod " << r.modulus.num << "/"
                          << r.modulus.den << ")\n";
            }
            return 0;
        }
        if (c_table->parsed()) return cmd_table(which, opt);
        if (c_verify->parsed()) return cmd_verify(quick, perturb, opt.intervals);
    } catch (const csinv::NonHyperbolicError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_nonhyperbolic;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numerical;
    }
    return 0;
}
