#pragma once

#include "tsgronwall/timescale.hpp"

namespace tsg {

/// Partial delta derivative in the first variable:
/// (f(sigma1(x), y) - f(x, y)) / mu1(x). Exact on isolated points; defined
/// for every index with i < n1 - 1, throws std::out_of_range at the maximum.
double delta_derivative_1_at(const GridFunction& f, std::size_t i, std::size_t j);

/// Partial delta derivative in the second variable, analogous to axis 1.
double delta_derivative_2_at(const GridFunction& f, std::size_t i, std::size_t j);

/// Grid function holding the axis-1 delta derivative on [0, n1-1) x [0, n2);
/// the returned grid drops the last axis-1 point.
GridFunction delta_derivative_1(const GridFunction& f);

/// Grid function holding the axis-2 delta derivative on [0, n1) x [0, n2-1).
GridFunction delta_derivative_2(const GridFunction& f);

/// Delta integral of values g over the half-open interval [a, b) of a single
/// time scale: the sum of g(s) * mu(s) over member points a <= s < b.
/// a and b must be member points with a <= b.
double delta_integral(const TimeScale& ts, const std::vector<double>& g, double a, double b);

/// Cumulative double integral of f from the minimal corner:
/// A(i, j) = sum over s < x_i, t < y_j of f(s, t) mu1(s) mu2(t).
/// A is zero along i = 0 and j = 0 and nondecreasing in each index when
/// f >= 0. Exact: no quadrature error enters on a finite grid.
GridFunction cumulative_double(const GridFunction& f);

/// Cumulative triple integral of f from the minimal corner:
/// T(i, j) = sum over eta < x_i of mu1(eta) * (x_i - sigma1(eta)) *
///           sum over tau < y_j of f(eta, tau) mu2(tau),
/// which is the iterated integral of f taken twice along axis 1 and once
/// along axis 2. Computed by the recurrence T(i+1, j) = T(i, j) +
/// mu1(i) * A(i, j) with A the cumulative double integral; the two forms
/// agree identically because the inner axis-1 integral telescopes.
GridFunction cumulative_triple(const GridFunction& f);

/// Time-scale exponential along axis 1 with y as a parameter:
/// E(i, j) = product over s < x_i of (1 + mu1(s) a(s, y_j)).
/// Requires every factor to be positive (regressivity on a scale with
/// positive graininess); throws std::domain_error naming the first
/// offending point otherwise. E(0, j) = 1 and E solves
/// E^{Delta1} = a E with E = 1 at the minimal axis-1 point.
GridFunction ts_exp_axis1(const GridFunction& a);

} // namespace tsg
