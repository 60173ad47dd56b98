#pragma once

#include "tsgronwall/timescale.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tsg {

/// Outcome of one side-condition check. worst_violation is signed: positive
/// means the condition was broken by that amount, zero or negative means it
/// held with that margin.
struct HypothesisCheck {
    std::string name;
    bool passed = false;
    double worst_violation = 0.0;
};

/// Result of evaluating an explicit bound. When any hypothesis fails the
/// evaluation is refused and `bound` is empty: a bound computed outside its
/// hypotheses would be meaningless. `notes` records interpretation decisions
/// baked into the formula so reports can surface them.
struct BoundResult {
    std::optional<GridFunction> bound;
    std::vector<HypothesisCheck> hypotheses;
    std::vector<std::string> notes;

    bool ok() const {
        if (!bound) return false;
        for (const auto& h : hypotheses)
            if (!h.passed) return false;
        return true;
    }
};

/// Black-box evaluators for a monotone Lipschitz pair: L(x, y, u) with slope
/// envelope H(x, y, v), intended to satisfy
///   0 <= L(x,y,u) - L(x,y,v) <= H(x,y,v) * (u - v)   for u >= v >= 0.
/// The property is sampled, never assumed.
struct LipschitzPair {
    std::function<double(double, double, double)> L;
    std::function<double(double, double, double)> H;
};

struct Interval {
    double lo = 0.0;
    double hi = 10.0;
};

/// Sampling parameters for the black-box hypothesis checks.
struct SampleOptions {
    Interval u_range{0.0, 10.0};
    std::size_t samples = 32;
    double tol = 1e-9;
    std::uint64_t seed = 0x51bababb1e5eedULL;
};

/// Bound for u <= k + triple integral of p*u:
/// B = k * E with E = ts_exp_axis1(cumulative_double(p)).
/// Hypotheses: k >= 0, p >= 0. Tight on the integer grid with p = 1, k = 1
/// at (2,2), where the exact solution of the equality version reaches B.
BoundResult bound_const(double k, const GridFunction& p);

/// Bound for u <= q + triple integral of p*u with a positive nondecreasing
/// free factor q: B = q * E, same E as bound_const. Hypotheses: p >= 0,
/// q > 0 pointwise, q nondecreasing in each variable.
BoundResult bound_factor(const GridFunction& q, const GridFunction& p);

/// Bound for u <= g + h * triple integral of L(eta, tau, u):
/// B = g + h * C * E with C = cumulative_triple of L(x, y, g(x,y)) and
/// E = ts_exp_axis1(cumulative_double of H(x, y, g(x,y)) * h).
/// Hypotheses: g, h >= 0, the sampled monotone Lipschitz condition on lp,
/// and L, H nonnegative along the free term g.
BoundResult bound_lipschitz(const GridFunction& g, const GridFunction& h,
                            const LipschitzPair& lp, const SampleOptions& opt = {});

/// Bound for u <= g + h * triple integral of p*u:
/// B = g + h * cumulative_triple(p*g) * ts_exp_axis1(cumulative_double(p*h)).
/// Hypotheses: g, h, p >= 0.
BoundResult bound_affine(const GridFunction& g, const GridFunction& h,
                         const GridFunction& p);

/// Samples pairs u >= v >= 0 from u_range at every grid point and checks
///   0 <= L(x,y,u) - L(x,y,v) <= H(x,y,v) * (u - v).
/// Reports the worst signed violation of either inequality; the pass
/// decision allows tol relative to the sampled magnitudes.
HypothesisCheck check_monotone_lipschitz(const LipschitzPair& lp, const Grid2& domain,
                                         const SampleOptions& opt = {});

/// Pass iff q(sigma1(x), y) >= q(x, y) and q(x, sigma2(y)) >= q(x, y)
/// everywhere applicable; worst_violation is the largest forward decrease.
HypothesisCheck check_nondecreasing(const GridFunction& q);

} // namespace tsg
