#include <cmath>

#include "doctest.h"
#include "leflab/fitting.hpp"

using namespace leflab;

TEST_CASE("pure power law is recovered exactly") {
    Vec x = {0.05, 0.08, 0.1, 0.15, 0.2};
    Vec y;
    for (double v : x) y.push_back(3.0 * v * v);
    PowerFit fit = fit_leading_order(x, y);
    CHECK(fit.exponent == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.coefficient == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.max_residual < 1e-12);
    CHECK(fit.drop_shift < 1e-12);
}

TEST_CASE("negative data keeps its sign in the coefficient") {
    Vec x = {0.1, 0.2, 0.4};
    Vec y;
    for (double v : x) y.push_back(-5.0 * std::pow(v, 1.5));
    PowerFit fit = fit_leading_order(x, y);
    CHECK(fit.exponent == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(fit.coefficient == doctest::Approx(-5.0).epsilon(1e-12));
}

TEST_CASE("log factor handled when its power is supplied") {
    // y = 2 mu^3 log(1/mu): with q = 1 the slope comes out 3.
    Vec x = {0.02, 0.04, 0.06, 0.08};
    Vec y;
    for (double v : x) y.push_back(2.0 * std::pow(v, 3) * std::log(1.0 / v));
    PowerFit fit = fit_leading_order(x, y, 1.0);
    CHECK(fit.exponent == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.coefficient == doctest::Approx(2.0).epsilon(1e-11));
    // Without the log correction the slope drifts visibly.
    PowerFit bare = fit_leading_order(x, y);
    CHECK(std::abs(bare.exponent - 3.0) > 0.05);
}

TEST_CASE("drop stability detects contamination by the next order") {
    Vec x = {0.05, 0.1, 0.2, 0.4, 0.8};
    Vec y;
    for (double v : x) y.push_back(v * (1.0 + 2.0 * v));
    PowerFit fit = fit_leading_order(x, y);
    CHECK(fit.drop_shift > 0.01);  // large-x samples bend the slope
}

TEST_CASE("power basis fit strips expansion terms") {
    // y(t) = 4 - 2 sqrt(t) + 0.7 t sampled on the acceptance-style grid.
    Vec t = {0.1, 0.15, 0.2, 0.25};
    Vec y;
    for (double v : t) y.push_back(4.0 - 2.0 * std::sqrt(v) + 0.7 * v);
    Vec c = fit_power_basis(t, y, {0.0, 0.5, 1.0});
    REQUIRE(c.size() == 3);
    CHECK(c[0] == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(c[1] == doctest::Approx(-2.0).epsilon(1e-10));
    CHECK(c[2] == doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("least squares projects noise-free overdetermined systems") {
    Vec x = {1.0, 2.0, 3.0, 4.0, 5.0};
    Vec y;
    for (double v : x) y.push_back(1.5 + 0.25 * v);
    std::vector<Vec> cols(2, Vec(x.size()));
    for (size_t i = 0; i < x.size(); ++i) {
        cols[0][i] = 1.0;
        cols[1][i] = x[i];
    }
    Vec c = least_squares(cols, y);
    CHECK(c[0] == doctest::Approx(1.5).epsilon(1e-13));
    CHECK(c[1] == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("degenerate inputs are rejected") {
    CHECK_THROWS_AS(fit_leading_order({0.1, 0.2}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_leading_order({0.1, 0.1, 0.1}, {1.0, 1.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(least_squares({}, {1.0}), std::invalid_argument);
}
