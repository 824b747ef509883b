#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "leflab/complexes.hpp"

using namespace leflab;

namespace {

// Dense polynomial in n variables, total degree <= deg, exact jet at any base.
struct Poly {
    int n, deg;
    std::vector<double> c;  // indexed by MultiIndexSet::get(n, deg)

    static Poly random(int n, int deg, std::mt19937& rng) {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        Poly p{n, deg, {}};
        p.c.resize(MultiIndexSet::get(n, deg).size());
        for (auto& v : p.c) v = u(rng);
        return p;
    }

    JetD jet(const Vec& x0, int order) const {
        std::vector<JetD> vars;
        for (int i = 0; i < n; ++i) vars.push_back(JetD::variable(n, order, i, x0[i]));
        const MultiIndexSet& m = MultiIndexSet::get(n, deg);
        JetD s(n, order);
        for (int i = 0; i < m.size(); ++i) {
            JetD term = JetD::constant(n, order, c[i]);
            const auto& al = m.alpha(i);
            for (int v = 0; v < n; ++v)
                for (int p = 0; p < al[v]; ++p) term = term * vars[v];
            s += term;
        }
        return s;
    }
};

// Jets of the coefficients of s pulled back through g, at base point x0:
// Pb(g, x0) applied to the coefficient jets of s at the moved point,
// composed with the affine chart map of the action.
std::vector<JetD> pullback_jets(const Geometry& geom, int j, const Vec& angles,
                                const ChartPoint& x0, const std::vector<Poly>& s, int order) {
    ActionResult moved = geom.act(angles, x0);
    const int n = geom.dim();
    // Inner jets of the affine chart map: value at the moved point, linear
    // part from the action differential.
    std::vector<JetD> inner;
    for (int k = 0; k < n; ++k) {
        JetD u(n, order, moved.point.x[k]);
        for (int v = 0; v < n && order >= 1; ++v)
            u += moved.differential(k, v) * JetD::variable(n, order, v, 0.0);
        inner.push_back(u);
    }
    MatD pb = pullback_matrix(geom, j, angles, x0);
    std::vector<JetD> moved_jets;
    for (const auto& comp : s)
        moved_jets.push_back(jet_compose(comp.jet(moved.point.x, order), inner));
    std::vector<JetD> out;
    for (int i = 0; i < pb.rows; ++i) {
        JetD acc(n, order);
        for (int q = 0; q < pb.cols; ++q) acc += pb(i, q) * moved_jets[q];
        out.push_back(acc);
    }
    return out;
}

// Exterior derivative on coefficient jets; drops one jet order.
std::vector<JetD> d_jets(int n, int j, const std::vector<JetD>& s) {
    if (n == 1) return {s[0].deriv(0)};
    if (j == 0) return {s[0].deriv(0), s[0].deriv(1)};
    return {s[1].deriv(0) - s[0].deriv(1)};
}

double max_jet_diff(const JetD& a, const JetD& b) {
    double m = 0.0;
    for (int i = 0; i < a.ncoeff(); ++i) m = std::max(m, std::abs(a.raw(i) - b.raw(i)));
    return m;
}

}  // namespace

TEST_CASE("fiber ranks alternate to zero and Euler numbers match Betti sums") {
    for (Scenario s : all_scenarios()) {
        DeRhamData data = de_rham_data(s);
        int alt_rank = 0, alt_betti = 0, sign = 1;
        for (size_t j = 0; j < data.fiber_rank.size(); ++j, sign = -sign) {
            alt_rank += sign * data.fiber_rank[j];
            alt_betti += sign * data.betti[j];
        }
        CHECK(alt_rank == 0);
        CHECK(alt_betti == data.euler);
    }
    CHECK(de_rham_data(Scenario::Circle).euler == 0);
    CHECK(de_rham_data(Scenario::Torus2).euler == 0);
    CHECK(de_rham_data(Scenario::Sphere2).euler == 2);
    CHECK(de_rham_data(Scenario::Sphere2).betti == std::vector<int>{1, 0, 1});
}

TEST_CASE("pullback on one-forms transposes the rotation, top degree takes its determinant") {
    Geometry geom(Scenario::Sphere2);
    ChartPoint p{0, {0.7, -0.2}};
    double phi = 0.9;
    MatD pb1 = pullback_matrix(geom, 1, {phi}, p);
    CHECK(pb1(0, 0) == doctest::Approx(std::cos(phi)).epsilon(1e-14));
    CHECK(pb1(0, 1) == doctest::Approx(std::sin(phi)).epsilon(1e-14));
    CHECK(pb1(1, 0) == doctest::Approx(-std::sin(phi)).epsilon(1e-14));
    CHECK(pb1(1, 1) == doctest::Approx(std::cos(phi)).epsilon(1e-14));

    MatD pb2 = pullback_matrix(geom, 2, {phi}, p);
    CHECK(pb2(0, 0) == doctest::Approx(1.0).epsilon(1e-14));

    Geometry flat(Scenario::Torus2);
    MatD fb = pullback_matrix(flat, 1, {0.3, 1.1}, ChartPoint{0, {2.0, 3.0}});
    CHECK(fb(0, 0) == doctest::Approx(1.0));
    CHECK(fb(0, 1) == doctest::Approx(0.0));
    CHECK(fb(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("pullback matrices compose along the group law") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ang(0.0, two_pi);
    for (Scenario s : all_scenarios()) {
        Geometry geom(s);
        for (int trial = 0; trial < 20; ++trial) {
            Vec g1(geom.group_dim()), g2(geom.group_dim()), g12(geom.group_dim());
            for (int a = 0; a < geom.group_dim(); ++a) {
                g1[a] = ang(rng);
                g2[a] = ang(rng);
                g12[a] = g1[a] + g2[a];
            }
            ChartPoint p{0, Vec(geom.dim())};
            for (int v = 0; v < geom.dim(); ++v) p.x[v] = 0.3 + 0.2 * v + 0.1 * trial / 20.0;
            for (int j = 0; j <= geom.dim(); ++j) {
                MatD a = pullback_matrix(geom, j, g1, p);
                MatD b = pullback_matrix(geom, j, g2, geom.act(g1, p).point);
                MatD lhs = a * b;
                MatD rhs = pullback_matrix(geom, j, g12, p);
                for (int r = 0; r < lhs.rows; ++r)
                    for (int c = 0; c < lhs.cols; ++c)
                        CHECK(lhs(r, c) == doctest::Approx(rhs(r, c)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("pullback commutes with the exterior derivative on polynomial forms") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ang(0.0, two_pi);
    const int order = 4;
    for (Scenario s : all_scenarios()) {
        Geometry geom(s);
        const int n = geom.dim();
        for (int trial = 0; trial < 6; ++trial) {
            Vec angles(geom.group_dim());
            for (int a = 0; a < geom.group_dim(); ++a) angles[a] = ang(rng);
            ChartPoint x0{0, Vec(n)};
            for (int v = 0; v < n; ++v) x0.x[v] = -0.8 + 0.5 * v + 0.11 * trial;
            for (int j = 0; j + 1 <= n; ++j) {
                int ncomp = de_rham_data(s).fiber_rank[j];
                std::vector<Poly> form;
                for (int c = 0; c < ncomp; ++c) form.push_back(Poly::random(n, 3, rng));

                // d then pull back, against pull back then d.
                std::vector<JetD> ts = pullback_jets(geom, j, angles, x0, form, order);
                std::vector<JetD> lhs = d_jets(n, j, ts);

                ActionResult moved = geom.act(angles, x0);
                std::vector<JetD> ds_at_moved;
                {
                    std::vector<JetD> sj;
                    for (const auto& comp : form) sj.push_back(comp.jet(moved.point.x, order));
                    ds_at_moved = d_jets(n, j, sj);
                }
                // Compose each d-coefficient with the affine action, then
                // apply the degree j+1 pullback matrix.
                std::vector<JetD> inner;
                for (int k = 0; k < n; ++k) {
                    JetD u(n, order - 1, moved.point.x[k]);
                    for (int v = 0; v < n; ++v)
                        u += moved.differential(k, v) * JetD::variable(n, order - 1, v, 0.0);
                    inner.push_back(u);
                }
                MatD pb = pullback_matrix(geom, j + 1, angles, x0);
                std::vector<JetD> composed;
                for (const auto& comp : ds_at_moved)
                    composed.push_back(jet_compose(jet_truncate(comp, order - 1), inner));
                for (int i = 0; i < pb.rows; ++i) {
                    JetD acc(n, order - 1);
                    for (int q = 0; q < pb.cols; ++q) acc += pb(i, q) * composed[q];
                    CHECK(max_jet_diff(lhs[i], acc) < 1e-10);
                }
            }
        }
    }
}

TEST_CASE("harmonic characters are the Betti numbers at every group element") {
    CHECK(harmonic_character(Scenario::Circle, 0, {1.2}) == doctest::Approx(1.0));
    CHECK(harmonic_character(Scenario::Circle, 1, {0.0}) == doctest::Approx(1.0));
    CHECK(harmonic_character(Scenario::Torus2, 1, {0.4, 2.2}) == doctest::Approx(2.0));
    CHECK(harmonic_character(Scenario::Sphere2, 1, {3.0}) == doctest::Approx(0.0));
    CHECK(harmonic_character(Scenario::Sphere2, 2, {3.0}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(harmonic_character(Scenario::Circle, 2, {0.0}), std::invalid_argument);
}

TEST_CASE("polyjet arithmetic against hand-expanded values") {
    const int n = 2, ord = 3;
    // p = (2 + x^2) xi1^2 + 3 xi1 xi2, expanded at x = (0.5, -1).
    PolyJet p(n, 6, n, ord);
    JetD x = JetD::variable(n, ord, 0, 0.5);
    p.coeff({2, 0}) = jet_complexify(JetD::constant(n, ord, 2.0) + x * x);
    p.coeff({1, 1}) = JetC(n, ord, cplx(3.0, 0.0));

    Vec xi = {2.0, -1.0};
    CHECK(p.eval(xi).real() == doctest::Approx((2.0 + 0.25) * 4.0 - 6.0).epsilon(1e-14));
    CHECK(p.eval(xi).imag() == doctest::Approx(0.0));

    PolyJet dxi = p.deriv_xi(0);  // 2(2+x^2) xi1 + 3 xi2
    CHECK(dxi.eval(xi).real() == doctest::Approx(2.0 * 2.25 * 2.0 - 3.0).epsilon(1e-14));

    PolyJet dx = p.deriv_x(0);  // 2x xi1^2
    CHECK(dx.x_order() == ord - 1);
    CHECK(dx.eval(xi).real() == doctest::Approx(1.0 * 4.0).epsilon(1e-14));

    JetC slice = p.eval_xi(xi);
    CHECK(slice.value().real() == doctest::Approx(2.25 * 4.0 - 6.0).epsilon(1e-14));
    // x1-derivative of the slice: 2x * xi1^2 = 4 at x1 = 0.5.
    CHECK(slice.deriv(0).value().real() == doctest::Approx(4.0).epsilon(1e-14));

    PolyJet sq = p * p;
    CHECK(sq.top_degree(1e-15) == 4);
    CHECK(sq.eval(xi).real() == doctest::Approx(sqr((2.25) * 4.0 - 6.0)).epsilon(1e-13));

    // Mixed jet orders truncate down to the lower one.
    PolyJet mixed = p * dx;
    CHECK(mixed.x_order() == ord - 1);

    CHECK(p.top_degree(1e-15) == 2);
    CHECK(PolyJet(n, 6, n, ord).is_zero());
}

TEST_CASE("polyjet products refuse to overflow the exponent capacity") {
    PolyJet a(1, 4, 1, 1), b(1, 4, 1, 1);
    a.coeff({3}) = JetC(1, 1, cplx(1.0, 0.0));
    b.coeff({3}) = JetC(1, 1, cplx(1.0, 0.0));
    CHECK_THROWS_WITH_AS(a * b, doctest::Contains("capacity"), std::invalid_argument);
    // Overflow against a zero coefficient is harmless.
    PolyJet z(1, 4, 1, 1);
    CHECK_NOTHROW(a * z);
}

TEST_CASE("chart symbols: flat scenarios carry the plain quadratic form") {
    for (Scenario s : {Scenario::Circle, Scenario::Torus2}) {
        Geometry geom(s);
        const int n = geom.dim();
        ChartPoint base{0, Vec(n, 0.7)};
        for (int j = 0; j <= n; ++j) {
            CHECK(symbol_available(s, j));
            LocalSymbol sym = laplace_symbol(geom, j, base, 3);
            CHECK(sym.rank == de_rham_data(s).fiber_rank[j]);
            Vec xi(n);
            for (int v = 0; v < n; ++v) xi[v] = 1.0 + v;
            double want = 0.0;
            for (int v = 0; v < n; ++v) want += sqr(xi[v]);
            CHECK(sym.p2.eval(xi).real() == doctest::Approx(want).epsilon(1e-14));
            CHECK(sym.p1.is_zero());
            CHECK(sym.p0.is_zero());
        }
    }
}

TEST_CASE("chart symbols: sphere functions scale by the conformal factor") {
    Geometry geom(Scenario::Sphere2);
    ChartPoint base{0, {0.3, -0.4}};
    LocalSymbol sym = laplace_symbol(geom, 0, base, 4);
    double c = sqr(1.0 + 0.25) / 4.0;
    CHECK(sym.p2.eval({1.0, 0.0}).real() == doctest::Approx(c).epsilon(1e-14));
    CHECK(sym.p2.eval({1.0, 2.0}).real() == doctest::Approx(5.0 * c).epsilon(1e-14));
    // Coefficient jets agree with the geometry's conformal profile.
    JetD conf = geom.conformal_factor_jet(base, 4);
    JetC stored = sym.p2.coeff({2, 0});
    for (int i = 0; i < conf.ncoeff(); ++i) {
        CHECK(stored.raw(i).real() == doctest::Approx(conf.raw(i)).epsilon(1e-13));
        CHECK(stored.raw(i).imag() == doctest::Approx(0.0));
    }
    CHECK(sym.p1.is_zero());
    CHECK(sym.p0.is_zero());

    CHECK_FALSE(symbol_available(Scenario::Sphere2, 1));
    CHECK_THROWS_WITH_AS(laplace_symbol(geom, 1, base, 3),
                         doctest::Contains("eigenvalue route"), SpectralOracleOnly);
    CHECK_THROWS_WITH_AS(laplace_symbol(geom, 2, base, 3),
                         doctest::Contains("eigenvalue route"), SpectralOracleOnly);
}
