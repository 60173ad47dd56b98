#include "tsgronwall/bounds.hpp"

#include "tsgronwall/calculus.hpp"
#include "tsgronwall/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tsg {
namespace {

HypothesisCheck nonneg_fn(const std::string& name, const GridFunction& f) {
    const double worst = -f.min_value();
    return {name, worst <= 0.0, worst};
}

HypothesisCheck nonneg_scalar(const std::string& name, double v) {
    return {name, v >= 0.0, -v};
}

HypothesisCheck positive_fn(const std::string& name, const GridFunction& f) {
    const double m = f.min_value();
    return {name, m > 0.0, -m};
}

bool all_passed(const std::vector<HypothesisCheck>& hs) {
    for (const auto& h : hs)
        if (!h.passed) return false;
    return true;
}

double mul(double a, double b) { return a * b; }

} // namespace

BoundResult bound_const(double k, const GridFunction& p) {
    BoundResult res;
    res.hypotheses.push_back(nonneg_scalar("k >= 0", k));
    res.hypotheses.push_back(nonneg_fn("p >= 0", p));
    if (!all_passed(res.hypotheses)) return res;
    GridFunction e = ts_exp_axis1(cumulative_double(p));
    res.bound = transform(e, [k](double v) { return k * v; });
    return res;
}

BoundResult bound_factor(const GridFunction& q, const GridFunction& p) {
    BoundResult res;
    res.hypotheses.push_back(nonneg_fn("p >= 0", p));
    res.hypotheses.push_back(positive_fn("q > 0", q));
    res.hypotheses.push_back(check_nondecreasing(q));
    res.notes.push_back(
        "exponential rate uses the weight p alone; a rate involving the unknown "
        "solution would make the bound circular");
    res.notes.push_back(
        "the free factor q must be strictly positive: the derivation divides by it, "
        "so nonnegativity alone is not enough");
    if (!all_passed(res.hypotheses)) return res;
    GridFunction e = ts_exp_axis1(cumulative_double(p));
    res.bound = zip(q, e, mul);
    return res;
}

BoundResult bound_lipschitz(const GridFunction& g, const GridFunction& h,
                            const LipschitzPair& lp, const SampleOptions& opt) {
    if (!lp.L || !lp.H)
        throw std::invalid_argument("bound_lipschitz: evaluator pair is incomplete");
    BoundResult res;
    res.hypotheses.push_back(nonneg_fn("g >= 0", g));
    res.hypotheses.push_back(nonneg_fn("h >= 0", h));
    res.hypotheses.push_back(check_monotone_lipschitz(lp, *g.grid(), opt));

    const Grid2& gr = *g.grid();
    std::vector<double> lg(g.values().size()), hg(g.values().size());
    for (std::size_t i = 0; i < gr.n1(); ++i)
        for (std::size_t j = 0; j < gr.n2(); ++j) {
            lg[i * gr.n2() + j] = lp.L(gr.x(i), gr.y(j), g(i, j));
            hg[i * gr.n2() + j] = lp.H(gr.x(i), gr.y(j), g(i, j));
        }
    const double worst_l = -*std::min_element(lg.begin(), lg.end());
    const double worst_h = -*std::min_element(hg.begin(), hg.end());
    res.hypotheses.push_back({"L >= 0 along the free term g", worst_l <= 0.0, worst_l});
    res.hypotheses.push_back({"H >= 0 along the free term g", worst_h <= 0.0, worst_h});
    if (!all_passed(res.hypotheses)) return res;

    GridFunction c = cumulative_triple(GridFunction(g.grid(), std::move(lg)));
    GridFunction rate = zip(GridFunction(g.grid(), std::move(hg)), h, mul);
    GridFunction e = ts_exp_axis1(cumulative_double(rate));
    res.bound = zip(g, zip(h, zip(c, e, mul), mul), [](double a, double b) { return a + b; });
    return res;
}

BoundResult bound_affine(const GridFunction& g, const GridFunction& h,
                         const GridFunction& p) {
    BoundResult res;
    res.hypotheses.push_back(nonneg_fn("g >= 0", g));
    res.hypotheses.push_back(nonneg_fn("h >= 0", h));
    res.hypotheses.push_back(nonneg_fn("p >= 0", p));
    if (!all_passed(res.hypotheses)) return res;
    GridFunction c = cumulative_triple(zip(p, g, mul));
    GridFunction e = ts_exp_axis1(cumulative_double(zip(p, h, mul)));
    res.bound = zip(g, zip(h, zip(c, e, mul), mul), [](double a, double b) { return a + b; });
    return res;
}

HypothesisCheck check_monotone_lipschitz(const LipschitzPair& lp, const Grid2& domain,
                                         const SampleOptions& opt) {
    if (!lp.L || !lp.H)
        throw std::invalid_argument("check_monotone_lipschitz: evaluator pair is incomplete");
    if (!(opt.u_range.lo <= opt.u_range.hi))
        throw std::invalid_argument("check_monotone_lipschitz: empty u_range");
    if (opt.u_range.lo < 0.0)
        throw std::invalid_argument("check_monotone_lipschitz: u_range must lie in [0, inf)");
    if (opt.samples < 1)
        throw std::invalid_argument("check_monotone_lipschitz: need at least one sample");

    Rng rng(opt.seed);
    double worst = -std::numeric_limits<double>::infinity();
    double scale = 1.0;
    for (std::size_t i = 0; i < domain.n1(); ++i)
        for (std::size_t j = 0; j < domain.n2(); ++j) {
            const double x = domain.x(i), y = domain.y(j);
            for (std::size_t s = 0; s < opt.samples; ++s) {
                const double a = rng.uniform(opt.u_range.lo, opt.u_range.hi);
                const double b = rng.uniform(opt.u_range.lo, opt.u_range.hi);
                const double u = std::max(a, b), v = std::min(a, b);
                const double lu = lp.L(x, y, u);
                const double lv = lp.L(x, y, v);
                const double slope_term = lp.H(x, y, v) * (u - v);
                worst = std::max(worst, std::max(lv - lu, (lu - lv) - slope_term));
                scale = std::max({scale, std::abs(lu), std::abs(lv), std::abs(slope_term)});
            }
        }
    return {"monotone Lipschitz pair (0 <= L(u)-L(v) <= H(v)*(u-v))",
            worst <= opt.tol * scale, worst};
}

HypothesisCheck check_nondecreasing(const GridFunction& q) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < q.n1(); ++i)
        for (std::size_t j = 0; j < q.n2(); ++j) {
            if (i + 1 < q.n1()) worst = std::max(worst, q(i, j) - q(i + 1, j));
            if (j + 1 < q.n2()) worst = std::max(worst, q(i, j) - q(i, j + 1));
        }
    return {"q nondecreasing in each variable", worst <= 0.0, worst};
}

} // namespace tsg
