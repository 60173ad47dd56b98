#include "tsgronwall/timescale.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tsg {

TimeScale::TimeScale(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2)
        throw std::invalid_argument("TimeScale: need at least two points");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i]))
            throw std::invalid_argument("TimeScale: point " + std::to_string(i) +
                                        " is not finite");
        if (i > 0 && !(points_[i - 1] < points_[i]))
            throw std::invalid_argument("TimeScale: points must be strictly increasing (index " +
                                        std::to_string(i) + ")");
    }
}

TimeScale TimeScale::uniform(double lo, double hi, std::size_t n) {
    if (n < 2) throw std::invalid_argument("TimeScale::uniform: need at least two points");
    if (!(lo < hi)) throw std::invalid_argument("TimeScale::uniform: requires lo < hi");
    std::vector<double> pts(n);
    const double h = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) pts[i] = lo + h * static_cast<double>(i);
    pts.back() = hi;
    return TimeScale(std::move(pts));
}

TimeScale TimeScale::integers(long lo, long hi) {
    if (lo >= hi) throw std::invalid_argument("TimeScale::integers: requires lo < hi");
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (long v = lo; v <= hi; ++v) pts.push_back(static_cast<double>(v));
    return TimeScale(std::move(pts));
}

TimeScale TimeScale::geometric(double base, double first, std::size_t n) {
    if (n < 2) throw std::invalid_argument("TimeScale::geometric: need at least two points");
    if (!(base > 1.0)) throw std::invalid_argument("TimeScale::geometric: requires base > 1");
    if (!(first > 0.0)) throw std::invalid_argument("TimeScale::geometric: requires first > 0");
    std::vector<double> pts(n);
    double v = first;
    for (std::size_t i = 0; i < n; ++i, v *= base) pts[i] = v;
    return TimeScale(std::move(pts));
}

std::size_t TimeScale::index_of(double t) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), t);
    if (it == points_.end() || *it != t)
        throw std::out_of_range("TimeScale: " + std::to_string(t) + " is not a member point");
    return static_cast<std::size_t>(it - points_.begin());
}

bool TimeScale::contains(double t) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), t);
    return it != points_.end() && *it == t;
}

GridFunction::GridFunction(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), n2_(0), values_(std::move(values)) {
    if (!grid_) throw std::invalid_argument("GridFunction: null grid");
    n2_ = grid_->n2();
    if (values_.size() != grid_->n1() * grid_->n2())
        throw std::invalid_argument("GridFunction: value count does not match grid size");
    for (double v : values_)
        if (!std::isfinite(v))
            throw std::invalid_argument("GridFunction: values must be finite");
}

GridFunction GridFunction::constant(GridPtr grid, double c) {
    if (!grid) throw std::invalid_argument("GridFunction::constant: null grid");
    std::vector<double> vals(grid->n1() * grid->n2(), c);
    return GridFunction(std::move(grid), std::move(vals));
}

GridFunction GridFunction::from_fn(GridPtr grid,
                                   const std::function<double(double, double)>& f) {
    if (!grid) throw std::invalid_argument("GridFunction::from_fn: null grid");
    std::vector<double> vals(grid->n1() * grid->n2());
    for (std::size_t i = 0; i < grid->n1(); ++i)
        for (std::size_t j = 0; j < grid->n2(); ++j)
            vals[i * grid->n2() + j] = f(grid->x(i), grid->y(j));
    return GridFunction(std::move(grid), std::move(vals));
}

double GridFunction::value_at(double x, double y) const {
    return (*this)(grid_->axis1().index_of(x), grid_->axis2().index_of(y));
}

double GridFunction::min_value() const {
    return *std::min_element(values_.begin(), values_.end());
}

double GridFunction::max_value() const {
    return *std::max_element(values_.begin(), values_.end());
}

double GridFunction::sup_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

} // namespace tsg
