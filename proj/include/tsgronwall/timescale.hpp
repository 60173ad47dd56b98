#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

namespace tsg {

/// A finite time scale: a strictly increasing sequence of at least two real
/// time points. Every non-maximal point is isolated, so the forward jump,
/// graininess, delta derivatives and delta integrals built on this type are
/// exact finite expressions, not approximations.
class TimeScale {
public:
    /// Validates: length >= 2, all values finite, strictly increasing.
    explicit TimeScale(std::vector<double> points);

    /// n equally spaced points covering [lo, hi]; the last point is exactly hi.
    static TimeScale uniform(double lo, double hi, std::size_t n);

    /// The integer points lo, lo+1, ..., hi.
    static TimeScale integers(long lo, long hi);

    /// The q-geometric scale first, first*base, ..., first*base^(n-1).
    /// Requires base > 1 and first > 0.
    static TimeScale geometric(double base, double first, std::size_t n);

    std::size_t size() const { return points_.size(); }
    double operator[](std::size_t i) const { return points_[i]; }
    const std::vector<double>& points() const { return points_; }
    double min() const { return points_.front(); }
    double max() const { return points_.back(); }

    /// Index of an exact member point; throws std::out_of_range otherwise.
    std::size_t index_of(double t) const;
    bool contains(double t) const;

    /// Forward jump: the next point, or t itself at the maximum.
    double sigma(double t) const { return sigma_at(index_of(t)); }
    double sigma_at(std::size_t i) const {
        return i + 1 < points_.size() ? points_[i + 1] : points_[i];
    }

    /// Backward jump: the previous point, or t itself at the minimum.
    double rho(double t) const { return rho_at(index_of(t)); }
    double rho_at(std::size_t i) const { return i > 0 ? points_[i - 1] : points_[i]; }

    /// Graininess sigma(t) - t; zero exactly at the maximum.
    double mu(double t) const { return mu_at(index_of(t)); }
    double mu_at(std::size_t i) const { return sigma_at(i) - points_[i]; }

private:
    std::vector<double> points_;
};

/// Product domain of two time scales. The origin (x0, y0) is the minimal
/// corner by construction.
class Grid2 {
public:
    Grid2(TimeScale axis1, TimeScale axis2)
        : axis1_(std::move(axis1)), axis2_(std::move(axis2)) {}

    const TimeScale& axis1() const { return axis1_; }
    const TimeScale& axis2() const { return axis2_; }
    std::size_t n1() const { return axis1_.size(); }
    std::size_t n2() const { return axis2_.size(); }
    double x(std::size_t i) const { return axis1_[i]; }
    double y(std::size_t j) const { return axis2_[j]; }
    double x0() const { return axis1_.min(); }
    double y0() const { return axis2_.min(); }

    bool same_points(const Grid2& other) const {
        return axis1_.points() == other.axis1_.points() &&
               axis2_.points() == other.axis2_.points();
    }

private:
    TimeScale axis1_;
    TimeScale axis2_;
};

using GridPtr = std::shared_ptr<const Grid2>;

inline GridPtr make_grid(TimeScale axis1, TimeScale axis2) {
    return std::make_shared<const Grid2>(std::move(axis1), std::move(axis2));
}

/// Real values attached to every point of a Grid2, stored row-major in the
/// axis-1 index. All values must be finite; nonnegativity is not intrinsic
/// and is checked by the operations that need it.
class GridFunction {
public:
    GridFunction(GridPtr grid, std::vector<double> values);

    static GridFunction constant(GridPtr grid, double c);
    static GridFunction from_fn(GridPtr grid, const std::function<double(double, double)>& f);

    double operator()(std::size_t i, std::size_t j) const { return values_[i * n2_ + j]; }

    /// Value at a member point (x, y); throws std::out_of_range for non-members.
    double value_at(double x, double y) const;

    std::size_t n1() const { return grid_->n1(); }
    std::size_t n2() const { return n2_; }
    const GridPtr& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }

    bool same_grid(const GridFunction& other) const {
        return grid_ == other.grid_ || grid_->same_points(*other.grid_);
    }

    double min_value() const;
    double max_value() const;
    double sup_abs() const;

private:
    GridPtr grid_;
    std::size_t n2_;
    std::vector<double> values_;
};

/// Pointwise f(a).
template <class F>
GridFunction transform(const GridFunction& a, F&& f) {
    std::vector<double> out(a.values().size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = f(a.values()[k]);
    return GridFunction(a.grid(), std::move(out));
}

/// Pointwise f(a, b); the operands must live on the same grid.
template <class F>
GridFunction zip(const GridFunction& a, const GridFunction& b, F&& f) {
    if (!a.same_grid(b)) throw std::invalid_argument("zip: operands live on different grids");
    std::vector<double> out(a.values().size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = f(a.values()[k], b.values()[k]);
    return GridFunction(a.grid(), std::move(out));
}

} // namespace tsg
