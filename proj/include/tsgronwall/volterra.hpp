#pragma once

#include "tsgronwall/bounds.hpp"
#include "tsgronwall/timescale.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace tsg {

/// Kernel of the dynamic Volterra equation
///   u(x,y) = g(x,y) + triple integral over eta < x, tau < y of
///            K(x, y, eta, tau, u(eta, tau)),
/// where the triple integral carries the collapsed weight
/// mu1(eta) * (x - sigma1(eta)) * mu2(tau). The evaluator must be total and
/// deterministic for grid arguments and finite u.
struct Kernel {
    std::function<double(double x, double y, double eta, double tau, double u)> eval;

    static Kernel zero() {
        return Kernel{[](double, double, double, double, double) { return 0.0; }};
    }
};

/// A grid function together with its sup-norm defect against the equation;
/// epsilon is computed at construction, never trusted from the caller.
struct ApproxSolution {
    GridFunction u;
    double epsilon = 0.0;
};

ApproxSolution make_approx_solution(GridFunction u, const GridFunction& g, const Kernel& K);

class IterationLimitError : public std::runtime_error {
public:
    IterationLimitError(const std::string& what, double last_residual)
        : std::runtime_error(what), last_residual_(last_residual) {}
    double last_residual() const { return last_residual_; }

private:
    double last_residual_;
};

/// Solves the equation exactly on the finite grid by one forward sweep in
/// lexicographic order (axis-1 index outer, axis-2 inner): every integration
/// range is half-open, so the value at (x, y) depends only on values at
/// eta < x, tau < y, which the sweep has already produced. Any sweep order
/// respecting that dependency yields the identical result.
GridFunction solve_exact(const GridFunction& g, const Kernel& K);

struct PicardResult {
    GridFunction u;
    std::size_t iterations = 0;
};

/// Fixed-point iteration u <- g + triple integral of K(., ., eta, tau, u),
/// stopping once a sweep moves the iterate by at most tol in sup norm.
/// `iterations` counts the sweeps that changed the iterate (the confirming
/// final sweep is free), so a fixed-point start reports 0. Independent of
/// solve_exact by construction: no forward substitution, whole-grid sweeps.
/// Throws IterationLimitError carrying the last sup-norm step if max_iter
/// sweeps do not reach tol.
PicardResult picard_iterate(const GridFunction& g, const Kernel& K, const GridFunction& u0,
                            double tol, std::size_t max_iter);

/// Sup-norm defect of u against the equation: the least eps for which u is
/// an eps-approximate solution.
double residual_sup(const GridFunction& u, const GridFunction& g, const Kernel& K);

/// A-priori bound on |u| for any exact solution whose data satisfy the
/// kernel Lipschitz factorization (check_kernel_lipschitz) and the
/// zero-section envelope (check_envelope):
/// B = pEnv + q * cumulative_triple(r*pEnv) * ts_exp_axis1(cumulative_double(r*q)).
/// Hypotheses: pEnv, q, r >= 0.
BoundResult apriori_bound(const GridFunction& pEnv, const GridFunction& q,
                          const GridFunction& r);

/// Default sampling window for check_kernel_lipschitz: solutions of the
/// equation may be negative, so the range is symmetric.
inline SampleOptions kernel_sample_defaults() {
    SampleOptions opt;
    opt.u_range = Interval{-10.0, 10.0};
    opt.samples = 4096;
    return opt;
}

/// Samples |K(x,y,eta,tau,u) - K(x,y,eta,tau,v)| <= q(x,y) r(eta,tau) |u - v|
/// over grid point pairs (eta < x, tau < y) and u, v draws from u_range.
HypothesisCheck check_kernel_lipschitz(const Kernel& K, const GridFunction& q,
                                       const GridFunction& r,
                                       const SampleOptions& opt = kernel_sample_defaults());

/// Zero-section term g + triple integral of K(., ., ., ., 0), evaluated
/// exactly by forward sums. Its pointwise magnitude is the least admissible
/// envelope for check_envelope.
GridFunction zero_section(const GridFunction& g, const Kernel& K);

/// Evaluates the zero-section term exactly and checks |z| <= pEnv pointwise.
HypothesisCheck check_envelope(const GridFunction& g, const Kernel& K,
                               const GridFunction& pEnv, double tol = 1e-9);

/// Bound on |u1 - u2| for an eps1- and an eps2-approximate solution sharing
/// the same data, with the kernel Lipschitz factorization q, r:
/// B = (eps1 + eps2) * [1 + q * cumulative_triple(r) * ts_exp_axis1(cumulative_double(r*q))].
/// Identically zero at eps1 = eps2 = 0 (uniqueness of the exact solution)
/// and exactly linear in eps1 + eps2. Hypotheses: eps1, eps2 >= 0; q, r >= 0.
BoundResult two_solution_bound(double eps1, double eps2, const GridFunction& q,
                               const GridFunction& r);

} // namespace tsg
