#include "tsgronwall/calculus.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tsg {

double delta_derivative_1_at(const GridFunction& f, std::size_t i, std::size_t j) {
    const Grid2& g = *f.grid();
    if (i + 1 >= g.n1())
        throw std::out_of_range("delta_derivative_1_at: undefined at the axis-1 maximum");
    if (j >= g.n2()) throw std::out_of_range("delta_derivative_1_at: axis-2 index out of range");
    return (f(i + 1, j) - f(i, j)) / g.axis1().mu_at(i);
}

double delta_derivative_2_at(const GridFunction& f, std::size_t i, std::size_t j) {
    const Grid2& g = *f.grid();
    if (j + 1 >= g.n2())
        throw std::out_of_range("delta_derivative_2_at: undefined at the axis-2 maximum");
    if (i >= g.n1()) throw std::out_of_range("delta_derivative_2_at: axis-1 index out of range");
    return (f(i, j + 1) - f(i, j)) / g.axis2().mu_at(j);
}

GridFunction delta_derivative_1(const GridFunction& f) {
    const Grid2& g = *f.grid();
    auto pts = g.axis1().points();
    pts.pop_back();
    auto sub = make_grid(TimeScale(std::move(pts)), g.axis2());
    std::vector<double> vals(sub->n1() * sub->n2());
    for (std::size_t i = 0; i < sub->n1(); ++i)
        for (std::size_t j = 0; j < sub->n2(); ++j)
            vals[i * sub->n2() + j] = delta_derivative_1_at(f, i, j);
    return GridFunction(std::move(sub), std::move(vals));
}

GridFunction delta_derivative_2(const GridFunction& f) {
    const Grid2& g = *f.grid();
    auto pts = g.axis2().points();
    pts.pop_back();
    auto sub = make_grid(g.axis1(), TimeScale(std::move(pts)));
    std::vector<double> vals(sub->n1() * sub->n2());
    for (std::size_t i = 0; i < sub->n1(); ++i)
        for (std::size_t j = 0; j < sub->n2(); ++j)
            vals[i * sub->n2() + j] = delta_derivative_2_at(f, i, j);
    return GridFunction(std::move(sub), std::move(vals));
}

double delta_integral(const TimeScale& ts, const std::vector<double>& g, double a, double b) {
    if (g.size() != ts.size())
        throw std::invalid_argument("delta_integral: value count does not match the time scale");
    const std::size_t ia = ts.index_of(a);
    const std::size_t ib = ts.index_of(b);
    if (ia > ib) throw std::invalid_argument("delta_integral: requires a <= b");
    double sum = 0.0;
    for (std::size_t k = ia; k < ib; ++k) sum += g[k] * ts.mu_at(k);
    return sum;
}

GridFunction cumulative_double(const GridFunction& f) {
    const Grid2& g = *f.grid();
    const std::size_t n1 = g.n1(), n2 = g.n2();
    std::vector<double> row(n2, 0.0);
    std::vector<double> out(n1 * n2, 0.0);
    for (std::size_t i = 0; i + 1 < n1; ++i) {
        const double mu1 = g.axis1().mu_at(i);
        double acc = 0.0;
        for (std::size_t j = 0; j + 1 < n2; ++j) {
            row[j] += mu1 * f(i, j);
            acc += row[j] * g.axis2().mu_at(j);
            out[(i + 1) * n2 + (j + 1)] = acc;
        }
    }
    return GridFunction(f.grid(), std::move(out));
}

GridFunction cumulative_triple(const GridFunction& f) {
    const GridFunction a = cumulative_double(f);
    const Grid2& g = *f.grid();
    const std::size_t n1 = g.n1(), n2 = g.n2();
    std::vector<double> out(n1 * n2, 0.0);
    for (std::size_t i = 0; i + 1 < n1; ++i) {
        const double mu1 = g.axis1().mu_at(i);
        for (std::size_t j = 0; j < n2; ++j)
            out[(i + 1) * n2 + j] = out[i * n2 + j] + mu1 * a(i, j);
    }
    return GridFunction(f.grid(), std::move(out));
}

GridFunction ts_exp_axis1(const GridFunction& a) {
    const Grid2& g = *a.grid();
    const std::size_t n1 = g.n1(), n2 = g.n2();
    std::vector<double> out(n1 * n2);
    for (std::size_t j = 0; j < n2; ++j) out[j] = 1.0;
    for (std::size_t i = 0; i + 1 < n1; ++i) {
        const double mu1 = g.axis1().mu_at(i);
        for (std::size_t j = 0; j < n2; ++j) {
            const double factor = 1.0 + mu1 * a(i, j);
            if (!(factor > 0.0))
                throw std::domain_error(
                    "ts_exp_axis1: 1 + mu1 * a is not positive at (x, y) = (" +
                    std::to_string(g.x(i)) + ", " + std::to_string(g.y(j)) + ")");
            out[(i + 1) * n2 + j] = out[i * n2 + j] * factor;
        }
    }
    return GridFunction(a.grid(), std::move(out));
}

} // namespace tsg
