#include <cmath>

#include "doctest.h"
#include "leflab/quadrature.hpp"

using namespace leflab;

TEST_CASE("gauss legendre integrates low polynomials exactly") {
    const Rule1D& r = gauss_legendre_rule(8);
    double s0 = 0.0, s2 = 0.0, s14 = 0.0;
    for (size_t i = 0; i < r.x.size(); ++i) {
        s0 += r.w[i];
        s2 += r.w[i] * r.x[i] * r.x[i];
        s14 += r.w[i] * std::pow(r.x[i], 14);
    }
    CHECK(s0 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(s14 == doctest::Approx(2.0 / 15.0).epsilon(1e-13));  // degree 14 < 2*8
}

TEST_CASE("gauss hermite recovers gaussian moments") {
    const Rule1D& r = gauss_hermite_rule(20);
    double s0 = 0.0, s2 = 0.0, s6 = 0.0;
    for (size_t i = 0; i < r.x.size(); ++i) {
        s0 += r.w[i];
        s2 += r.w[i] * r.x[i] * r.x[i];
        s6 += r.w[i] * std::pow(r.x[i], 6);
    }
    double rp = std::sqrt(pi);
    CHECK(s0 == doctest::Approx(rp).epsilon(1e-13));
    CHECK(s2 == doctest::Approx(0.5 * rp).epsilon(1e-13));
    CHECK(s6 == doctest::Approx(15.0 / 8.0 * rp).epsilon(1e-12));
}

TEST_CASE("periodic trapezoid kills pure fourier modes") {
    // int_0^{2pi} e^{i k theta} dtheta = 0 for k = 1..3, 2pi for k = 0.
    for (int k = 0; k <= 3; ++k) {
        QuadratureSpec ax;
        ax.kind = RuleKind::PeriodicTrapezoid;
        ax.nodes = 16;
        ax.a = 0.0;
        ax.b = two_pi;
        auto f = [k](const Vec& x) { return std::exp(cplx(0.0, k * x[0])); };
        IntegrationResult res = integrate(f, {ax});
        cplx expect = (k == 0) ? cplx(two_pi) : cplx(0.0);
        CHECK(std::abs(res.value - expect) < 1e-13);
        CHECK(res.converged);
    }
}

TEST_CASE("full line axis reproduces gaussian and oscillatory gaussian") {
    QuadratureSpec ax;
    ax.kind = RuleKind::GaussianFullLine;
    ax.nodes = 48;
    ax.truncation_radius = 7.0;
    auto g = [](const Vec& x) { return cplx(std::exp(-x[0] * x[0])); };
    IntegrationResult rg = integrate(g, {ax});
    CHECK(std::abs(rg.value - std::sqrt(pi)) < 1e-12);
    // int e^{2 i xi} e^{-xi^2} dxi = sqrt(pi) e^{-1}.
    auto h = [](const Vec& x) { return std::exp(cplx(-x[0] * x[0], 2.0 * x[0])); };
    IntegrationResult rh = integrate(h, {ax});
    CHECK(std::abs(rh.value - std::sqrt(pi) * std::exp(-1.0)) < 1e-12);
}

TEST_CASE("product integration over two axes") {
    // int_0^{2pi} int_R cos(theta)^2 e^{-xi^2} dxi dtheta = pi * sqrt(pi).
    QuadratureSpec th;
    th.kind = RuleKind::PeriodicTrapezoid;
    th.nodes = 12;
    th.a = 0.0;
    th.b = two_pi;
    QuadratureSpec xi;
    xi.kind = RuleKind::GaussianFullLine;
    xi.nodes = 40;
    xi.truncation_radius = 7.0;
    auto f = [](const Vec& x) {
        return cplx(sqr(std::cos(x[0])) * std::exp(-x[1] * x[1]));
    };
    IntegrationResult res = integrate(f, {th, xi});
    CHECK(std::abs(res.value - pi * std::sqrt(pi)) < 1e-11);
}

TEST_CASE("half line axis handles even radial profiles") {
    QuadratureSpec ax;
    ax.kind = RuleKind::GaussianHalfLine;
    ax.nodes = 40;
    ax.truncation_radius = 8.0;
    // int_0^inf r e^{-r^2} dr = 1/2.
    auto f = [](const Vec& x) { return cplx(x[0] * std::exp(-x[0] * x[0])); };
    IntegrationResult res = integrate(f, {ax});
    CHECK(std::abs(res.value - 0.5) < 1e-12);
}

TEST_CASE("non finite integrand values are reported with the node") {
    QuadratureSpec ax;
    ax.kind = RuleKind::GaussLegendre;
    ax.nodes = 8;
    ax.a = 0.0;
    ax.b = 1.0;
    auto f = [](const Vec& x) { return cplx(1.0 / (x[0] - x[0])); };
    CHECK_THROWS_WITH_AS(integrate(f, {ax}), doctest::Contains("non-finite"),
                         std::runtime_error);
}

TEST_CASE("doubling estimate flags an under-resolved phase") {
    QuadratureSpec ax;
    ax.kind = RuleKind::GaussLegendre;
    ax.nodes = 4;
    ax.a = -1.0;
    ax.b = 1.0;
    ax.abs_tol = 1e-12;
    auto f = [](const Vec& x) { return std::exp(cplx(0.0, 40.0 * x[0])); };
    IntegrationResult res = integrate(f, {ax});
    CHECK_FALSE(res.converged);
    CHECK(res.flag.find("doubling estimate") != std::string::npos);
}

TEST_CASE("gaussian fourier moments match closed forms") {
    // M_0(b, c) = sqrt(pi/c) e^{-b^2/(4c)}; M_1 = i b/(2c) M_0;
    // M_2 = (1/(2c) - b^2/(4c^2)) M_0.
    for (double b : {0.0, 2.0, 13.5}) {
        for (double c : {1.0, 0.35}) {
            MomentSet ms = gaussian_fourier_moments(b, c, 2);
            double m0 = std::sqrt(pi / c) * std::exp(-b * b / (4 * c));
            CHECK(std::abs(ms.m[0] - cplx(m0)) < 1e-12);
            CHECK(std::abs(ms.m[1] - cplx(0.0, b / (2 * c) * m0)) < 1e-12);
            CHECK(std::abs(ms.m[2] - cplx((1.0 / (2 * c) - b * b / (4 * c * c)) * m0)) <
                  1e-11);
        }
    }
}

TEST_CASE("ladder snapping is monotone and idempotent") {
    CHECK(quadrature_ladder(1) == 8);
    CHECK(quadrature_ladder(8) == 8);
    CHECK(quadrature_ladder(9) == 12);
    int a = quadrature_ladder(100);
    CHECK(a >= 100);
    CHECK(quadrature_ladder(a) == a);
}
