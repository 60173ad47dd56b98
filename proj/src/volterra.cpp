#include "tsgronwall/volterra.hpp"

#include "tsgronwall/calculus.hpp"
#include "tsgronwall/format.hpp"
#include "tsgronwall/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tsg {
namespace {

double mul(double a, double b) { return a * b; }

/// Triple integral of K(x_i, y_j, eta, tau, u(eta, tau)) at grid point
/// (i, j) using the collapsed weight mu1(eta) * (x_i - sigma1(eta)) * mu2(tau).
/// `uat(l, m)` supplies the solution value at inner index (l, m).
template <class UAt>
double triple_at(const Grid2& gr, const Kernel& K, std::size_t i, std::size_t j, UAt&& uat) {
    const TimeScale& ax1 = gr.axis1();
    const TimeScale& ax2 = gr.axis2();
    const double x = ax1[i], y = ax2[j];
    double outer = 0.0;
    for (std::size_t l = 0; l < i; ++l) {
        const double w1 = ax1.mu_at(l) * (x - ax1.sigma_at(l));
        if (w1 == 0.0) continue;
        const double eta = ax1[l];
        double inner = 0.0;
        for (std::size_t m = 0; m < j; ++m) {
            const double kv = K.eval(x, y, eta, ax2[m], uat(l, m));
            if (!std::isfinite(kv))
                throw std::domain_error("kernel returned a non-finite value at (x, y, eta, tau) = (" +
                                        fmt17(x) + ", " + fmt17(y) + ", " + fmt17(eta) + ", " +
                                        fmt17(ax2[m]) + ")");
            inner += kv * ax2.mu_at(m);
        }
        outer += w1 * inner;
    }
    return outer;
}

void require_kernel(const Kernel& K, const char* who) {
    if (!K.eval) throw std::invalid_argument(std::string(who) + ": kernel has no evaluator");
}

} // namespace

GridFunction solve_exact(const GridFunction& g, const Kernel& K) {
    require_kernel(K, "solve_exact");
    const Grid2& gr = *g.grid();
    const std::size_t n1 = gr.n1(), n2 = gr.n2();
    std::vector<double> u(g.values());
    for (std::size_t i = 1; i < n1; ++i)
        for (std::size_t j = 1; j < n2; ++j) {
            const double value =
                g(i, j) + triple_at(gr, K, i, j,
                                    [&](std::size_t l, std::size_t m) { return u[l * n2 + m]; });
            if (!std::isfinite(value))
                throw std::domain_error("solve_exact: solution is not finite at (x, y) = (" +
                                        fmt17(gr.x(i)) + ", " + fmt17(gr.y(j)) + ")");
            u[i * n2 + j] = value;
        }
    return GridFunction(g.grid(), std::move(u));
}

PicardResult picard_iterate(const GridFunction& g, const Kernel& K, const GridFunction& u0,
                            double tol, std::size_t max_iter) {
    require_kernel(K, "picard_iterate");
    if (!(tol > 0.0)) throw std::invalid_argument("picard_iterate: tol must be positive");
    if (max_iter < 1) throw std::invalid_argument("picard_iterate: max_iter must be at least 1");
    if (!g.same_grid(u0))
        throw std::invalid_argument("picard_iterate: u0 lives on a different grid than g");

    const Grid2& gr = *g.grid();
    const std::size_t n1 = gr.n1(), n2 = gr.n2();
    std::vector<double> cur(u0.values()), next(cur.size());
    double step = std::numeric_limits<double>::infinity();
    for (std::size_t sweep = 1; sweep <= max_iter; ++sweep) {
        step = 0.0;
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = 0; j < n2; ++j) {
                const double value =
                    g(i, j) + triple_at(gr, K, i, j, [&](std::size_t l, std::size_t m) {
                        return cur[l * n2 + m];
                    });
                next[i * n2 + j] = value;
                step = std::max(step, std::abs(value - cur[i * n2 + j]));
            }
        cur.swap(next);
        if (step <= tol) return {GridFunction(g.grid(), std::move(cur)), sweep - 1};
    }
    throw IterationLimitError("picard_iterate: no convergence within " +
                                  std::to_string(max_iter) + " sweeps (last step " +
                                  fmt17(step) + ")",
                              step);
}

double residual_sup(const GridFunction& u, const GridFunction& g, const Kernel& K) {
    require_kernel(K, "residual_sup");
    if (!u.same_grid(g))
        throw std::invalid_argument("residual_sup: u lives on a different grid than g");
    const Grid2& gr = *g.grid();
    double worst = 0.0;
    for (std::size_t i = 0; i < gr.n1(); ++i)
        for (std::size_t j = 0; j < gr.n2(); ++j) {
            const double rhs = g(i, j) + triple_at(gr, K, i, j, [&](std::size_t l, std::size_t m) {
                                   return u(l, m);
                               });
            worst = std::max(worst, std::abs(u(i, j) - rhs));
        }
    return worst;
}

ApproxSolution make_approx_solution(GridFunction u, const GridFunction& g, const Kernel& K) {
    const double eps = residual_sup(u, g, K);
    return {std::move(u), eps};
}

BoundResult apriori_bound(const GridFunction& pEnv, const GridFunction& q,
                          const GridFunction& r) {
    BoundResult res;
    auto nonneg = [](const std::string& name, const GridFunction& f) -> HypothesisCheck {
        const double worst = -f.min_value();
        return {name, worst <= 0.0, worst};
    };
    res.hypotheses.push_back(nonneg("pEnv >= 0", pEnv));
    res.hypotheses.push_back(nonneg("q >= 0", q));
    res.hypotheses.push_back(nonneg("r >= 0", r));
    res.notes.push_back(
        "weight functions are read as functions of the grid coordinates (x, y); "
        "a stray second-coordinate symbol in their arguments is identified with y");
    for (const auto& h : res.hypotheses)
        if (!h.passed) return res;
    GridFunction c = cumulative_triple(zip(r, pEnv, mul));
    GridFunction e = ts_exp_axis1(cumulative_double(zip(r, q, mul)));
    res.bound = zip(pEnv, zip(q, zip(c, e, mul), mul), [](double a, double b) { return a + b; });
    return res;
}

HypothesisCheck check_kernel_lipschitz(const Kernel& K, const GridFunction& q,
                                       const GridFunction& r, const SampleOptions& opt) {
    require_kernel(K, "check_kernel_lipschitz");
    if (!q.same_grid(r))
        throw std::invalid_argument("check_kernel_lipschitz: q and r live on different grids");
    if (!(opt.u_range.lo <= opt.u_range.hi))
        throw std::invalid_argument("check_kernel_lipschitz: empty u_range");
    if (opt.samples < 1)
        throw std::invalid_argument("check_kernel_lipschitz: need at least one sample");

    const Grid2& gr = *q.grid();
    Rng rng(opt.seed);
    double worst = -std::numeric_limits<double>::infinity();
    double scale = 1.0;
    for (std::size_t s = 0; s < opt.samples; ++s) {
        const std::size_t i = 1 + rng.index(gr.n1() - 1);
        const std::size_t j = 1 + rng.index(gr.n2() - 1);
        const std::size_t l = rng.index(i);
        const std::size_t m = rng.index(j);
        const double x = gr.x(i), y = gr.y(j), eta = gr.x(l), tau = gr.y(m);
        const double u = rng.uniform(opt.u_range.lo, opt.u_range.hi);
        const double v = rng.uniform(opt.u_range.lo, opt.u_range.hi);
        const double lhs = std::abs(K.eval(x, y, eta, tau, u) - K.eval(x, y, eta, tau, v));
        const double rhs = q(i, j) * r(l, m) * std::abs(u - v);
        worst = std::max(worst, lhs - rhs);
        scale = std::max({scale, lhs, rhs});
    }
    return {"kernel Lipschitz factorization (|K(u)-K(v)| <= q(x,y)*r(eta,tau)*|u-v|)",
            worst <= opt.tol * scale, worst};
}

GridFunction zero_section(const GridFunction& g, const Kernel& K) {
    require_kernel(K, "zero_section");
    const Grid2& gr = *g.grid();
    const std::size_t n2 = gr.n2();
    std::vector<double> z(g.values());
    for (std::size_t i = 1; i < gr.n1(); ++i)
        for (std::size_t j = 1; j < n2; ++j)
            z[i * n2 + j] =
                g(i, j) + triple_at(gr, K, i, j, [](std::size_t, std::size_t) { return 0.0; });
    return GridFunction(g.grid(), std::move(z));
}

HypothesisCheck check_envelope(const GridFunction& g, const Kernel& K,
                               const GridFunction& pEnv, double tol) {
    if (!g.same_grid(pEnv))
        throw std::invalid_argument("check_envelope: pEnv lives on a different grid than g");
    GridFunction z = zero_section(g, K);
    double worst = -std::numeric_limits<double>::infinity();
    double scale = 1.0;
    for (std::size_t k = 0; k < z.values().size(); ++k) {
        const double zv = std::abs(z.values()[k]);
        worst = std::max(worst, zv - pEnv.values()[k]);
        scale = std::max({scale, zv, pEnv.values()[k]});
    }
    return {"zero-section envelope (|g + triple integral of K(.,0)| <= pEnv)",
            worst <= tol * scale, worst};
}

BoundResult two_solution_bound(double eps1, double eps2, const GridFunction& q,
                               const GridFunction& r) {
    BoundResult res;
    res.hypotheses.push_back({"eps1 >= 0", eps1 >= 0.0, -eps1});
    res.hypotheses.push_back({"eps2 >= 0", eps2 >= 0.0, -eps2});
    res.hypotheses.push_back({"q >= 0", -q.min_value() <= 0.0, -q.min_value()});
    res.hypotheses.push_back({"r >= 0", -r.min_value() <= 0.0, -r.min_value()});
    res.notes.push_back(
        "closed form: the two-solution gap also satisfies the affine inequality with "
        "constant free term eps1 + eps2, so the explicit affine bound is applied to it; "
        "a form quoting the gap inside its own integral would be circular");
    for (const auto& h : res.hypotheses)
        if (!h.passed) return res;
    GridFunction c = cumulative_triple(r);
    GridFunction e = ts_exp_axis1(cumulative_double(zip(r, q, mul)));
    GridFunction factor = zip(q, zip(c, e, mul), [](double a, double b) { return 1.0 + a * b; });
    const double eps = eps1 + eps2;
    res.bound = transform(factor, [eps](double f) { return eps * f; });
    return res;
}

} // namespace tsg
