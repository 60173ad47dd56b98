#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tsgronwall/calculus.hpp"
#include "tsgronwall/rng.hpp"
#include "tsgronwall/timescale.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

using namespace tsg;

TEST_CASE("time scale construction validates its points") {
    CHECK_THROWS_AS(TimeScale({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(TimeScale({}), std::invalid_argument);
    CHECK_THROWS_AS(TimeScale({0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(TimeScale({1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(TimeScale({0.0, std::numeric_limits<double>::infinity()}),
                    std::invalid_argument);
    CHECK_THROWS_AS(TimeScale({0.0, std::numeric_limits<double>::quiet_NaN()}),
                    std::invalid_argument);
    CHECK_NOTHROW(TimeScale({-1.0, 0.5, 3.0}));
}

TEST_CASE("uniform factory covers [lo, hi] with an exact right endpoint") {
    TimeScale ts = TimeScale::uniform(0.0, 0.3, 4);
    CHECK(ts.size() == 4);
    CHECK(ts.min() == 0.0);
    CHECK(ts.max() == 0.3);  // exactly hi, not lo + 3*h
    CHECK_THROWS_AS(TimeScale::uniform(1.0, 0.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(TimeScale::uniform(0.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("integer and geometric factories") {
    TimeScale z = TimeScale::integers(-2, 2);
    CHECK(z.size() == 5);
    CHECK(z[0] == -2.0);
    CHECK(z[4] == 2.0);
    CHECK_THROWS_AS(TimeScale::integers(3, 3), std::invalid_argument);

    TimeScale q = TimeScale::geometric(2.0, 1.0, 4);
    CHECK(q.points() == std::vector<double>{1.0, 2.0, 4.0, 8.0});
    CHECK_THROWS_AS(TimeScale::geometric(1.0, 1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(TimeScale::geometric(2.0, 0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(TimeScale::geometric(2.0, -1.0, 4), std::invalid_argument);
}

TEST_CASE("jump operators and graininess on isolated points") {
    TimeScale ts({0.0, 1.0, 2.5});
    CHECK(ts.sigma(0.0) == 1.0);
    CHECK(ts.sigma(1.0) == 2.5);
    CHECK(ts.sigma(2.5) == 2.5);  // fixed at the maximum
    CHECK(ts.rho(0.0) == 0.0);    // fixed at the minimum
    CHECK(ts.rho(2.5) == 1.0);
    CHECK(ts.mu(0.0) == 1.0);
    CHECK(ts.mu(1.0) == 1.5);
    CHECK(ts.mu(2.5) == 0.0);
    CHECK(ts.index_of(2.5) == 2);
    CHECK(ts.contains(1.0));
    CHECK_FALSE(ts.contains(1.5));
    CHECK_THROWS_AS(ts.index_of(1.5), std::out_of_range);
}

TEST_CASE("grid functions validate values and locate points") {
    GridPtr grid = make_grid(TimeScale::integers(0, 2), TimeScale::integers(0, 1));
    CHECK_THROWS_AS(GridFunction(grid, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(GridFunction(grid, {1, 2, 3, 4, 5, std::nan("")}), std::invalid_argument);

    GridFunction f = GridFunction::from_fn(grid, [](double x, double y) { return 10 * x + y; });
    CHECK(f(2, 1) == 21.0);
    CHECK(f.value_at(1.0, 0.0) == 10.0);
    CHECK_THROWS_AS(f.value_at(0.5, 0.0), std::out_of_range);
    CHECK(f.min_value() == 0.0);
    CHECK(f.max_value() == 21.0);

    GridFunction c = GridFunction::constant(grid, -3.0);
    CHECK(c.sup_abs() == 3.0);
    CHECK(transform(c, [](double v) { return -v; }).min_value() == 3.0);
    CHECK(zip(f, c, [](double a, double b) { return a + b; })(2, 1) == 18.0);

    GridPtr other = make_grid(TimeScale::integers(0, 3), TimeScale::integers(0, 1));
    GridFunction g = GridFunction::constant(other, 1.0);
    CHECK_THROWS_AS(zip(f, g, [](double a, double b) { return a + b; }), std::invalid_argument);

    GridPtr same_pts = make_grid(TimeScale::integers(0, 2), TimeScale::integers(0, 1));
    CHECK(f.same_grid(GridFunction::constant(same_pts, 0.0)));
}

TEST_CASE("delta derivatives are exact difference quotients on isolated points") {
    GridPtr grid = make_grid(TimeScale({0.0, 1.0, 2.5, 3.0}), TimeScale::integers(0, 2));
    GridFunction f = GridFunction::from_fn(grid, [](double x, double y) { return x * x + y; });

    // (sigma(x)^2 - x^2) / mu(x) = sigma(x) + x, with no rounding on these points
    CHECK(delta_derivative_1_at(f, 0, 0) == 1.0);
    CHECK(delta_derivative_1_at(f, 1, 2) == 3.5);
    CHECK(delta_derivative_2_at(f, 0, 0) == 1.0);
    CHECK_THROWS_AS(delta_derivative_1_at(f, 3, 0), std::out_of_range);
    CHECK_THROWS_AS(delta_derivative_2_at(f, 0, 2), std::out_of_range);

    GridFunction d1 = delta_derivative_1(f);
    CHECK(d1.n1() == 3);
    CHECK(d1.n2() == 3);
    CHECK(d1(1, 1) == 3.5);
    GridFunction d2 = delta_derivative_2(f);
    CHECK(d2.n1() == 4);
    CHECK(d2.n2() == 2);
    CHECK(d2(3, 1) == 1.0);
}

TEST_CASE("delta integrals are half-open weighted sums") {
    TimeScale ts = TimeScale::integers(0, 4);
    std::vector<double> ones(5, 1.0);
    CHECK(delta_integral(ts, ones, 0.0, 3.0) == 3.0);
    CHECK(delta_integral(ts, ones, 0.0, 4.0) == 4.0);  // mu(4) never enters
    CHECK(delta_integral(ts, ones, 2.0, 2.0) == 0.0);
    CHECK_THROWS_AS(delta_integral(ts, ones, 3.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(delta_integral(ts, ones, 0.5, 3.0), std::out_of_range);
    CHECK_THROWS_AS(delta_integral(ts, {1.0, 2.0}, 0.0, 3.0), std::invalid_argument);

    TimeScale gaps({0.0, 0.5, 2.0, 2.25});
    std::vector<double> vals{2.0, 4.0, 8.0, 16.0};
    CHECK(delta_integral(gaps, vals, 0.0, 2.25) == 2.0 * 0.5 + 4.0 * 1.5 + 8.0 * 0.25);
}

TEST_CASE("the fundamental identity: integrating a delta derivative telescopes") {
    Rng rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> pts{rng.uniform(-2.0, 0.0)};
        const std::size_t n = 3 + rng.index(10);
        for (std::size_t i = 1; i < n; ++i) pts.push_back(pts.back() + rng.uniform(0.05, 1.0));
        TimeScale ts(pts);

        std::vector<double> f(n), df(n, 0.0);
        for (auto& v : f) v = rng.uniform(-5.0, 5.0);
        for (std::size_t i = 0; i + 1 < n; ++i) df[i] = (f[i + 1] - f[i]) / ts.mu_at(i);

        const std::size_t a = rng.index(n), b = rng.index(n);
        const std::size_t lo = std::min(a, b), hi = std::max(a, b);
        const double integral = delta_integral(ts, df, ts[lo], ts[hi]);
        CHECK(std::abs(integral - (f[hi] - f[lo])) <= 1e-12 * std::max(1.0, std::abs(f[hi])));
    }
}
