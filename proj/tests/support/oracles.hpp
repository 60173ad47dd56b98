#pragma once

// Brute-force reference implementations, deliberately written in the most
// literal form available: nested sums following the definitions symbol by
// symbol, with none of the library's algebraic shortcuts. Tests freeze these
// as the ground truth the library must match.

#include "tsgronwall/rng.hpp"
#include "tsgronwall/timescale.hpp"
#include "tsgronwall/volterra.hpp"

#include <cmath>
#include <vector>

namespace oracle {

// A(i, j) = sum over a < i, b < j of f(a, b) mu1(a) mu2(b).
inline tsg::GridFunction naive_cumulative_double(const tsg::GridFunction& f) {
    const tsg::Grid2& gr = *f.grid();
    std::vector<double> out(gr.n1() * gr.n2(), 0.0);
    for (std::size_t i = 0; i < gr.n1(); ++i)
        for (std::size_t j = 0; j < gr.n2(); ++j) {
            double s = 0.0;
            for (std::size_t a = 0; a < i; ++a)
                for (std::size_t b = 0; b < j; ++b)
                    s += f(a, b) * gr.axis1().mu_at(a) * gr.axis2().mu_at(b);
            out[i * gr.n2() + j] = s;
        }
    return tsg::GridFunction(f.grid(), std::move(out));
}

// Fully iterated triple sum:
// T(i, j) = sum over s < i of mu1(s) * sum over a < s of mu1(a) *
//           sum over b < j of f(a, b) mu2(b).
inline tsg::GridFunction naive_cumulative_triple(const tsg::GridFunction& f) {
    const tsg::Grid2& gr = *f.grid();
    std::vector<double> out(gr.n1() * gr.n2(), 0.0);
    for (std::size_t i = 0; i < gr.n1(); ++i)
        for (std::size_t j = 0; j < gr.n2(); ++j) {
            double total = 0.0;
            for (std::size_t s = 0; s < i; ++s) {
                double middle = 0.0;
                for (std::size_t a = 0; a < s; ++a) {
                    double inner = 0.0;
                    for (std::size_t b = 0; b < j; ++b)
                        inner += f(a, b) * gr.axis2().mu_at(b);
                    middle += gr.axis1().mu_at(a) * inner;
                }
                total += gr.axis1().mu_at(s) * middle;
            }
            out[i * gr.n2() + j] = total;
        }
    return tsg::GridFunction(f.grid(), std::move(out));
}

// Collapsed two-loop form with the explicit weight mu1(a) * (x_i - sigma1(a)).
inline tsg::GridFunction weighted_cumulative_triple(const tsg::GridFunction& f) {
    const tsg::Grid2& gr = *f.grid();
    std::vector<double> out(gr.n1() * gr.n2(), 0.0);
    for (std::size_t i = 0; i < gr.n1(); ++i)
        for (std::size_t j = 0; j < gr.n2(); ++j) {
            double total = 0.0;
            for (std::size_t a = 0; a < i; ++a) {
                double inner = 0.0;
                for (std::size_t b = 0; b < j; ++b) inner += f(a, b) * gr.axis2().mu_at(b);
                total += gr.axis1().mu_at(a) * (gr.x(i) - gr.axis1().sigma_at(a)) * inner;
            }
            out[i * gr.n2() + j] = total;
        }
    return tsg::GridFunction(f.grid(), std::move(out));
}

// E(i, j) = product over s < i of (1 + mu1(s) a(s, j)).
inline tsg::GridFunction naive_ts_exp_axis1(const tsg::GridFunction& a) {
    const tsg::Grid2& gr = *a.grid();
    std::vector<double> out(gr.n1() * gr.n2(), 1.0);
    for (std::size_t i = 0; i < gr.n1(); ++i)
        for (std::size_t j = 0; j < gr.n2(); ++j) {
            double prod = 1.0;
            for (std::size_t s = 0; s < i; ++s)
                prod *= 1.0 + gr.axis1().mu_at(s) * a(s, j);
            out[i * gr.n2() + j] = prod;
        }
    return tsg::GridFunction(a.grid(), std::move(out));
}

// Forward substitution sweeping axis 2 in the outer loop instead of axis 1.
// Every value still depends only on already-computed values, so the result
// must agree with the lexicographic sweep bit for bit.
inline tsg::GridFunction solve_exact_swapped(const tsg::GridFunction& g, const tsg::Kernel& K) {
    const tsg::Grid2& gr = *g.grid();
    std::vector<double> u(g.values());
    for (std::size_t j = 1; j < gr.n2(); ++j)
        for (std::size_t i = 1; i < gr.n1(); ++i) {
            double total = 0.0;
            for (std::size_t a = 0; a < i; ++a) {
                const double w1 = gr.axis1().mu_at(a) * (gr.x(i) - gr.axis1().sigma_at(a));
                if (w1 == 0.0) continue;
                double inner = 0.0;
                for (std::size_t b = 0; b < j; ++b)
                    inner += K.eval(gr.x(i), gr.y(j), gr.x(a), gr.y(b), u[a * gr.n2() + b]) *
                             gr.axis2().mu_at(b);
                total += w1 * inner;
            }
            u[i * gr.n2() + j] = g(i, j) + total;
        }
    return tsg::GridFunction(g.grid(), std::move(u));
}

// ---- randomized inputs for property tests ----

inline std::vector<double> random_points(tsg::Rng& rng, std::size_t n, int family) {
    std::vector<double> pts(n);
    switch (family) {
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
            double v = rng.uniform(0.1, 0.5);
            const double base = rng.uniform(1.05, 1.2);
            for (std::size_t i = 0; i < n; ++i, v *= base) pts[i] = v;
            break;
        }
        default: {
            double v = rng.uniform(-1.0, 1.0);
            for (std::size_t i = 0; i < n; ++i) {
                pts[i] = v;
                v += rng.uniform(0.02, 0.3);
            }
            break;
        }
    }
    return pts;
}

inline tsg::GridPtr random_grid(tsg::Rng& rng, std::size_t max_points) {
    const std::size_t n1 = 3 + rng.index(max_points - 2);
    const std::size_t n2 = 3 + rng.index(max_points - 2);
    return tsg::make_grid(tsg::TimeScale(random_points(rng, n1, static_cast<int>(rng.index(4)))),
                          tsg::TimeScale(random_points(rng, n2, static_cast<int>(rng.index(4)))));
}

inline tsg::GridFunction random_values(tsg::Rng& rng, const tsg::GridPtr& grid, double lo,
                                       double hi) {
    std::vector<double> v(grid->n1() * grid->n2());
    for (auto& x : v) x = rng.uniform(lo, hi);
    return tsg::GridFunction(grid, std::move(v));
}

inline double sup_diff(const tsg::GridFunction& a, const tsg::GridFunction& b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.values().size(); ++k)
        worst = std::max(worst, std::abs(a.values()[k] - b.values()[k]));
    return worst;
}

} // namespace oracle
