// End-to-end acceptance gate. Each numbered criterion prints exactly one
// PASS/FAIL line; the process exit code is the number of failed criteria.

#include "tsgronwall/bounds.hpp"
#include "tsgronwall/calculus.hpp"
#include "tsgronwall/expr.hpp"
#include "tsgronwall/harness.hpp"
#include "tsgronwall/rng.hpp"
#include "tsgronwall/timescale.hpp"
#include "tsgronwall/volterra.hpp"

#include "support/oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

using namespace tsg;

namespace {

volatile double perf_sink = 0.0;

std::string num(double v, const char* fmt = "%.3g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

TimeScale conditioned_axis(Rng& rng) {
    const std::size_t n = 4 + rng.index(9);
    std::vector<double> pts(n);
    switch (rng.index(4)) {
        case 0: {
            const long start = rng.range(-5, 5);
            for (std::size_t i = 0; i < n; ++i) pts[i] = static_cast<double>(start) + i;
            break;
        }
        case 1: {
            const double lo = rng.uniform(-1.0, 1.0), len = rng.uniform(0.5, 2.0);
            for (std::size_t i = 0; i < n; ++i)
                pts[i] = lo + len * static_cast<double>(i) / static_cast<double>(n - 1);
            break;
        }
        case 2: {
            double v = rng.uniform(0.5, 1.5);
            const double base = 1.01 + 0.04 * rng.unit();
            for (std::size_t i = 0; i < n; ++i, v *= base) pts[i] = v;
            break;
        }
        default: {
            double v = rng.uniform(-1.0, 1.0);
            for (std::size_t i = 0; i < n; ++i) {
                pts[i] = v;
                v += rng.uniform(0.1, 0.25);
            }
            break;
        }
    }
    return TimeScale(pts);
}

std::pair<bool, std::string> criterion_domination() {
    const auto t0 = std::chrono::steady_clock::now();
    const FuzzSummary sum = run_fuzz(FuzzOptions{});
    const double secs = seconds_since(t0);
    const bool ok = sum.trials == 1000 && sum.violations == 0 && sum.hypothesis_failures == 0 &&
                    secs < 60.0;
    return {ok, "domination: 1000 trials, " + std::to_string(sum.checks_run) + " checks, " +
                    std::to_string(sum.violations) + " violations, " +
                    std::to_string(sum.hypothesis_failures) + " hypothesis failures in " +
                    num(secs, "%.1f") + " s (limit 60 s)"};
}

std::pair<bool, std::string> criterion_tightness() {
    const GridPtr grid = make_grid(TimeScale::integers(0, 2), TimeScale::integers(0, 2));
    const GridFunction p = GridFunction::constant(grid, 1.0);
    const BoundResult br = bound_const(1.0, p);
    Kernel K{[p](double, double, double eta, double tau, double u) {
        return p.value_at(eta, tau) * u;
    }};
    const GridFunction u = solve_exact(GridFunction::constant(grid, 1.0), K);
    const double us = u.value_at(2.0, 2.0);
    const double bs = br.bound->value_at(2.0, 2.0);
    const bool ok = br.ok() && std::abs(us - 3.0) <= 1e-12 && std::abs(bs - 3.0) <= 1e-12;
    return {ok, "tightness witness: u(2,2) = " + num(us, "%.17g") + ", bound(2,2) = " +
                    num(bs, "%.17g") + ", both equal 3 to 1e-12"};
}

std::pair<bool, std::string> criterion_continuum() {
    const ConvergeTable tb = run_converge("const", {16, 32, 64, 128, 256});
    bool ok = tb.rows.size() == 5;
    std::string orders;
    for (std::size_t i = 0; i < tb.rows.size(); ++i) {
        ok = ok && tb.rows[i].has_error;
        if (i > 0) {
            ok = ok && tb.rows[i].error < tb.rows[i - 1].error;
            ok = ok && tb.rows[i].has_order && tb.rows[i].order >= 0.8 &&
                 tb.rows[i].order <= 1.2;
            orders += (orders.empty() ? "" : ", ") + num(tb.rows[i].order, "%.3f");
        }
    }
    const double rel = tb.rows.back().error / std::exp(0.25);
    ok = ok && rel < 0.01;
    return {ok, "continuum limit: orders " + orders + " all in [0.8, 1.2]; n=256 relative error " +
                    num(rel) + " < 1%"};
}

std::pair<bool, std::string> criterion_oracle_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(81);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const GridPtr grid = oracle::random_grid(rng, 15);
        const GridFunction p = oracle::random_values(rng, grid, 0.0, 2.0);
        const GridFunction g = oracle::random_values(rng, grid, 0.0, 2.0);
        const double kl = rng.uniform(0.0, 1.0);
        const double kg = rng.uniform(-1.0, 1.0);
        Kernel K{[p, kl, kg](double, double, double eta, double tau, double u) {
            return p.value_at(eta, tau) * (kl * u + kg);
        }};
        const GridFunction direct = solve_exact(g, K);
        const PicardResult pic = picard_iterate(g, K, GridFunction::constant(grid, 0.0), 1e-13,
                                                grid->n1() + 3);
        worst = std::max(worst, oracle::sup_diff(direct, pic.u));
    }
    const double secs = seconds_since(t0);
    const bool ok = worst <= 1e-10 && secs < 10.0;
    return {ok, "oracle equivalence: 50 scenarios, worst forward-sweep vs fixed-point "
                "disagreement " +
                    num(worst) + " <= 1e-10 in " + num(secs, "%.2f") + " s (limit 10 s)"};
}

std::pair<bool, std::string> criterion_mixed_derivative() {
    Rng rng(55);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const GridPtr grid = make_grid(conditioned_axis(rng), conditioned_axis(rng));
        const GridFunction p = oracle::random_values(rng, grid, 0.0, 2.0);
        const GridFunction g = oracle::random_values(rng, grid, 0.0, 2.0);
        Kernel K{[p](double, double, double eta, double tau, double u) {
            return p.value_at(eta, tau) * u;
        }};
        const GridFunction u = solve_exact(g, K);
        const GridFunction f = zip(p, u, [](double a, double b) { return a * b; });
        const GridFunction w = cumulative_triple(f);
        const GridFunction rec = delta_derivative_2(delta_derivative_1(delta_derivative_1(w)));
        const double scale = std::max(1.0, f.sup_abs());
        double err = 0.0;
        for (std::size_t i = 0; i < rec.n1(); ++i)
            for (std::size_t j = 0; j < rec.n2(); ++j)
                err = std::max(err, std::abs(rec(i, j) - f(i, j)));
        worst = std::max(worst, err / scale);
    }
    const bool ok = worst <= 1e-10;
    return {ok, "mixed delta derivative: 100 scenarios, recovering the integrand from its "
                "triple integral, worst scaled error " +
                    num(worst) + " <= 1e-10"};
}

std::pair<bool, std::string> criterion_fubini() {
    Rng rng(66);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const GridPtr grid = oracle::random_grid(rng, 20);
        const GridFunction f = oracle::random_values(rng, grid, 0.0, 2.0);
        const GridFunction collapsed = cumulative_triple(f);
        const GridFunction iterated = oracle::naive_cumulative_triple(f);
        const double scale = std::max(1.0, iterated.sup_abs());
        worst = std::max(worst, oracle::sup_diff(collapsed, iterated) / scale);
    }
    const bool ok = worst <= 1e-12;
    return {ok, "iterated-sum collapse: 100 grids, prefix-sum vs fully iterated triple sum, "
                "worst scaled disagreement " +
                    num(worst) + " <= 1e-12"};
}

std::pair<bool, std::string> criterion_uniqueness() {
    Rng rng(77);
    bool zero_ok = true;
    double worst_ratio = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const GridPtr grid = oracle::random_grid(rng, 12);
        const GridFunction q = oracle::random_values(rng, grid, 0.0, 2.0);
        const GridFunction r = oracle::random_values(rng, grid, 0.0, 2.0);
        const BoundResult zero = two_solution_bound(0.0, 0.0, q, r);
        zero_ok = zero_ok && zero.ok() && zero.bound->sup_abs() == 0.0;
        const double eps = rng.uniform(1e-6, 1.0);
        const BoundResult b1 = two_solution_bound(0.0, eps, q, r);
        const BoundResult b2 = two_solution_bound(0.0, 2.0 * eps, q, r);
        for (std::size_t k = 0; k < b1.bound->values().size(); ++k) {
            const double ratio = b2.bound->values()[k] / b1.bound->values()[k];
            worst_ratio = std::max(worst_ratio, std::abs(ratio - 2.0));
        }
    }
    const bool ok = zero_ok && worst_ratio <= 1e-12;
    return {ok, std::string("uniqueness: zero defects give the identically zero bound (") +
                    (zero_ok ? "yes" : "NO") + "); doubling the defect doubles the bound, worst "
                    "ratio error " + num(worst_ratio) + " <= 1e-12"};
}

std::pair<bool, std::string> criterion_reductions() {
    Rng rng(88);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const GridPtr grid = oracle::random_grid(rng, 12);
        const GridFunction p = oracle::random_values(rng, grid, 0.0, 2.0);
        const GridFunction g = oracle::random_values(rng, grid, 0.0, 2.0);
        const GridFunction h = oracle::random_values(rng, grid, 0.0, 2.0);
        const double k = rng.uniform(1e-3, 10.0);

        const BoundResult bc = bound_const(k, p);
        const BoundResult bf = bound_factor(GridFunction::constant(grid, k), p);
        if (!bc.ok() || !bf.ok()) return {false, "reductions: a specialization was refused"};
        double scale = std::max(1.0, bc.bound->sup_abs());
        worst = std::max(worst, oracle::sup_diff(*bc.bound, *bf.bound) / scale);

        LipschitzPair lp{[p](double x, double y, double u) { return p.value_at(x, y) * u; },
                         [p](double x, double y, double) { return p.value_at(x, y); }};
        const BoundResult bl = bound_lipschitz(g, h, lp);
        const BoundResult ba = bound_affine(g, h, p);
        if (!bl.ok() || !ba.ok()) return {false, "reductions: a specialization was refused"};
        scale = std::max(1.0, ba.bound->sup_abs());
        worst = std::max(worst, oracle::sup_diff(*bl.bound, *ba.bound) / scale);
    }
    const bool ok = worst <= 1e-12;
    return {ok, "reductions: constant-factor and linear-kernel specializations agree with the "
                "general bounds over 50 scenarios, worst scaled difference " +
                    num(worst) + " <= 1e-12"};
}

double bound_const_seconds_per_call(std::size_t n) {
    const GridPtr grid = make_grid(TimeScale::uniform(0.0, 1.0, n), TimeScale::uniform(0.0, 1.0, n));
    const GridFunction p =
        GridFunction::from_fn(grid, [](double x, double y) { return 0.5 + 0.25 * x * y; });
    auto run = [&](long reps) {
        const auto t0 = std::chrono::steady_clock::now();
        for (long k = 0; k < reps; ++k) {
            const BoundResult br = bound_const(1.0, p);
            perf_sink = perf_sink + (*br.bound)(n - 1, n - 1);
        }
        return seconds_since(t0);
    };
    run(3);
    long reps = 8;
    double t = run(reps);
    while (t < 0.4 && reps < (1L << 24)) {
        reps *= 4;
        t = run(reps);
    }
    return t / static_cast<double>(reps);
}

std::pair<bool, std::string> criterion_performance() {
    const double t64 = bound_const_seconds_per_call(64);
    const double t32 = bound_const_seconds_per_call(32);
    const double ratio = t64 / t32;
    const bool ok = t64 < 1.0 && ratio >= 3.0 && ratio <= 6.0;
    return {ok, "performance: 64x64 bound in " + num(t64 * 1e6, "%.1f") +
                    " us (< 1 s); 32x32 -> 64x64 time ratio " + num(ratio, "%.2f") +
                    " in [3, 6]"};
}

Expr random_expr(std::mt19937_64& rng, int depth) {
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
    auto unit = [&] { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); };
    static const char* const vars[] = {"x", "y", "s", "t", "u", "v"};
    if (depth == 0 || pick(4) == 0) {
        if (pick(2) == 0) return Expr::variable(vars[pick(6)]);
        switch (pick(3)) {
            case 0: return Expr::number(pick(10));
            case 1: return Expr::number(unit() * 10.0);
            default: return Expr::number(-unit());
        }
    }
    switch (pick(8)) {
        case 0: return Expr::binary('+', random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 1: return Expr::binary('-', random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 2: return Expr::binary('*', random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 3: return Expr::binary('/', random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 4: return Expr::unary_minus(random_expr(rng, depth - 1));
        case 5: return Expr::power(random_expr(rng, depth - 1), static_cast<unsigned>(pick(7)));
        case 6: return Expr::call(pick(2) == 0 ? "exp" : "abs", random_expr(rng, depth - 1));
        default:
            return Expr::call(pick(2) == 0 ? "min" : "max", random_expr(rng, depth - 1),
                              random_expr(rng, depth - 1));
    }
}

std::pair<bool, std::string> criterion_parser() {
    std::mt19937_64 rng(424242u);
    int bad_roundtrips = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const Expr e = random_expr(rng, 4);
        const std::string text = e.str();
        const Expr back = parse_expr(text);
        if (!(back == e) || back.str() != text) ++bad_roundtrips;
    }

    const std::vector<std::pair<std::string, std::size_t>> malformed = {
        {"1 + *2", 4}, {"(1+2", 4},   {"x^2.5", 2}, {"foo(1)", 0},
        {"", 0},       {"min(1)", 5}, {"1e999", 0}, {"1 2", 2},
    };
    int bad_diagnostics = 0;
    for (const auto& [src, offset] : malformed) {
        try {
            parse_expr(src);
            ++bad_diagnostics;
        } catch (const ParseError& e) {
            if (e.offset() != offset || std::string(e.what()).empty()) ++bad_diagnostics;
        } catch (...) {
            ++bad_diagnostics;
        }
    }

    const std::string charset = "xystuv0123456789+-*/^(),. eE";
    int crashes = 0;
    for (int trial = 0; trial < 500; ++trial) {
        std::string src;
        const std::size_t len = rng() % 25;
        for (std::size_t i = 0; i < len; ++i) src += charset[rng() % charset.size()];
        try {
            const Expr e = parse_expr(src);
            try {
                e.eval({{"x", 0.5}, {"y", 1.5}, {"s", -0.5}, {"t", 2.0}, {"u", 1.0}, {"v", 0.0}});
            } catch (const EvalError&) {
            }
        } catch (const ParseError&) {
        } catch (...) {
            ++crashes;
        }
    }

    const bool ok = bad_roundtrips == 0 && bad_diagnostics == 0 && crashes == 0;
    return {ok, "parser: " + std::to_string(200 - bad_roundtrips) + "/200 round-trips, " +
                    std::to_string(malformed.size() - static_cast<std::size_t>(bad_diagnostics)) +
                    "/" + std::to_string(malformed.size()) +
                    " positioned diagnostics, 500 arbitrary inputs without a crash"};
}

} // namespace

int main() {
    int failures = 0;
    auto guard = [&](int no, const std::function<std::pair<bool, std::string>()>& body) {
        bool ok = false;
        std::string detail;
        try {
            std::tie(ok, detail) = body();
        } catch (const std::exception& e) {
            detail = std::string("unexpected exception: ") + e.what();
        } catch (...) {
            detail = "unexpected non-standard exception";
        }
        std::printf("%s %2d  %s\n", ok ? "PASS" : "FAIL", no, detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    };

    guard(1, criterion_domination);
    guard(2, criterion_tightness);
    guard(3, criterion_continuum);
    guard(4, criterion_oracle_equivalence);
    guard(5, criterion_mixed_derivative);
    guard(6, criterion_fubini);
    guard(7, criterion_uniqueness);
    guard(8, criterion_reductions);
    guard(9, criterion_performance);
    guard(10, criterion_parser);
    return failures;
}
