#include "leflab/parametrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "leflab/quadrature.hpp"

namespace leflab {

namespace {

// A resolvent level as a sparse list over pole orders; slot j-1 multiplies
// (p2 - lambda)^{-(j)}.  Empty slots stand for zero.
using PoleTerms = std::vector<PolyJet>;

void add_term(PoleTerms& terms, size_t idx, const PolyJet& v) {
    if (terms.size() <= idx) terms.resize(idx + 1);
    if (terms[idx].nterms() == 0)
        terms[idx] = v;
    else
        terms[idx] += v;
}

// d/dx_nu of sum_j A_j q^{-j}: coefficient derivative in place plus the
// pole re-expansion -j A (d p2/dx_nu) q^{-(j+1)}.
PoleTerms derive_x(const PoleTerms& r, const PolyJet& dp2, int nu) {
    PoleTerms out;
    for (size_t idx = 0; idx < r.size(); ++idx) {
        if (r[idx].nterms() == 0) continue;
        add_term(out, idx, r[idx].deriv_x(nu));
        double j = static_cast<double>(idx + 1);
        add_term(out, idx + 1, cplx(-j, 0.0) * (r[idx] * dp2));
    }
    return out;
}

std::vector<std::vector<int>> multi_indices(int n, int total) {
    std::vector<std::vector<int>> out;
    if (n == 1) {
        out.push_back({total});
        return out;
    }
    for (int b = 0; b <= total; ++b) out.push_back({b, total - b});
    return out;
}

double beta_factorial(const std::vector<int>& beta) {
    double f = 1.0;
    for (int b : beta)
        for (int i = 2; i <= b; ++i) f *= i;
    return f;
}

void check_laplace_type(const LocalSymbol& sym) {
    const int n = sym.p2.nxi();
    const MultiIndexSet& m = sym.p2.xi_index();
    MatD quad(n, n);
    for (int i = 0; i < m.size(); ++i) {
        bool zero = sym.p2.term(i).value() == cplx{};
        for (int t = 0; t < sym.p2.term(i).ncoeff() && zero; ++t)
            zero = sym.p2.term(i).raw(t) == cplx{};
        if (m.degree(i) != 2 && !zero)
            throw std::invalid_argument("resolvent recursion: leading part must be purely quadratic");
        if (m.degree(i) != 2) continue;
        const auto& al = m.alpha(i);
        double val = sym.p2.term(i).value().real();
        if (n == 1) {
            quad(0, 0) = val;
        } else if (al[0] == 2) {
            quad(0, 0) = val;
        } else if (al[1] == 2) {
            quad(1, 1) = val;
        } else {
            quad(0, 1) = quad(1, 0) = 0.5 * val;
        }
    }
    for (double ev : symmetric_eigenvalues(quad))
        if (ev <= 0.0)
            throw std::invalid_argument("resolvent recursion: quadratic part must be positive definite");
    auto nonzero = [](const PolyJet& p, int i) {
        if (p.nterms() == 0) return false;
        for (int t = 0; t < p.term(i).ncoeff(); ++t)
            if (p.term(i).raw(t) != cplx{}) return true;
        return false;
    };
    for (int i = 0; i < m.size(); ++i) {
        if (m.degree(i) != 1 && nonzero(sym.p1, i))
            throw std::invalid_argument("resolvent recursion: first-order part must have xi-degree one");
        if (m.degree(i) != 0 && nonzero(sym.p0, i))
            throw std::invalid_argument("resolvent recursion: zeroth-order part must be xi-free");
    }
}

}  // namespace

cplx ResolventSymbol::eval(const Vec& xi, cplx lambda) const {
    cplx q = symbol.p2.eval(xi) - lambda;
    cplx s{};
    cplx qp = q;
    for (size_t idx = 0; idx < pole_terms.size(); ++idx) {
        if (pole_terms[idx].nterms() > 0) s += pole_terms[idx].eval(xi) / qp;
        qp *= q;
    }
    return s;
}

std::vector<ResolventSymbol> resolvent_levels(const LocalSymbol& sym, int kmax) {
    if (kmax < 0 || kmax > kResolventCap)
        throw std::invalid_argument("resolvent level beyond the configured cap");
    if (sym.p2.x_order() < kmax)
        throw std::invalid_argument("resolvent level " + std::to_string(kmax) +
                                    " requires base jet order >= " + std::to_string(kmax) +
                                    "; symbol carries order " + std::to_string(sym.p2.x_order()));
    check_laplace_type(sym);

    const int n = sym.p2.nxi();
    const int cap = sym.p2.xi_cap();
    const int ord = sym.p2.x_order();

    std::vector<PolyJet> dp2;
    if (kmax >= 1)
        for (int nu = 0; nu < n; ++nu) dp2.push_back(sym.p2.deriv_x(nu));

    std::vector<ResolventSymbol> levels;
    ResolventSymbol r0;
    r0.level = 0;
    r0.rank = sym.rank;
    r0.symbol = sym;
    r0.pole_terms = {PolyJet::constant(JetC(n, ord, cplx(1.0, 0.0)), n, cap)};
    levels.push_back(r0);

    const PolyJet* plist[3] = {&sym.p0, &sym.p1, &sym.p2};
    const cplx minus_i(0.0, -1.0);

    for (int k = 1; k <= kmax; ++k) {
        PoleTerms acc;
        for (int lp = 0; lp < k; ++lp) {
            for (int l = 0; l <= 2; ++l) {
                int blen = k - 2 + l - lp;
                if (blen < 0) continue;
                if (plist[l]->is_zero()) continue;
                for (const auto& beta : multi_indices(n, blen)) {
                    // d_xi^beta p_l
                    PolyJet pb = *plist[l];
                    for (int nu = 0; nu < n; ++nu)
                        for (int rep = 0; rep < beta[nu]; ++rep) pb = pb.deriv_xi(nu);
                    if (pb.is_zero()) continue;
                    // d_x^beta r_{lp}
                    PoleTerms dr = levels[lp].pole_terms;
                    for (int nu = 0; nu < n; ++nu)
                        for (int rep = 0; rep < beta[nu]; ++rep) dr = derive_x(dr, dp2[nu], nu);
                    cplx coef(1.0, 0.0);
                    for (int rep = 0; rep < blen; ++rep) coef *= minus_i;
                    coef /= beta_factorial(beta);
                    for (size_t idx = 0; idx < dr.size(); ++idx) {
                        if (dr[idx].nterms() == 0) continue;
                        add_term(acc, idx, coef * (pb * dr[idx]));
                    }
                }
            }
        }
        ResolventSymbol rk;
        rk.level = k;
        rk.rank = sym.rank;
        rk.symbol = sym;
        // Multiply by -r0: shift every pole order up by one and negate.
        rk.pole_terms.resize(acc.size() + 1);
        for (size_t idx = 0; idx < acc.size(); ++idx)
            if (acc[idx].nterms() > 0) rk.pole_terms[idx + 1] = cplx(-1.0, 0.0) * acc[idx];
        if (rk.max_pole_order() > 2 * k + 1)
            throw std::logic_error("resolvent recursion produced an impossible pole order");
        levels.push_back(std::move(rk));
    }
    return levels;
}

ResolventSymbol resolvent_recursion(const LocalSymbol& sym, int k) {
    return resolvent_levels(sym, k).back();
}

cplx contour_heat_term(double t, double q, int pole_order, const ContourSpec& spec) {
    if (pole_order < 1) throw std::invalid_argument("contour term needs pole order >= 1");
    if (spec.nodes < 64 || spec.nodes % 2 != 0)
        throw std::invalid_argument("contour rule needs an even node count >= 64");
    if (spec.radius <= std::abs(spec.center - cplx(q, 0.0)))
        throw std::invalid_argument("contour must enclose the symbol value");
    cplx s{};
    for (int m = 0; m < spec.nodes; ++m) {
        double th = two_pi * (m + 0.5) / spec.nodes;
        cplx rel = spec.radius * std::exp(cplx(0.0, th));
        cplx lam = spec.center + rel;
        cplx inv = cplx(1.0, 0.0) / (cplx(q, 0.0) - lam);
        cplx p(1.0, 0.0);
        for (int rep = 0; rep < pole_order; ++rep) p *= inv;
        s += std::exp(-t * lam) * p * rel;
    }
    s /= static_cast<double>(spec.nodes);
    return spec.counterclockwise ? s : -s;
}

namespace {

// The closed form below pairs a clockwise contour with +t^{j-1}/(j-1)!;
// verify once against quadrature so a silent sign flip cannot survive.
void orientation_self_test() {
    static const bool ok = [] {
        ContourSpec spec{cplx(1.3, 0.0), 1.0, 64, false};
        cplx via = contour_heat_term(0.7, 1.3, 1, spec);
        return std::abs(via - std::exp(cplx(-0.7 * 1.3, 0.0))) < 1e-10;
    }();
    if (!ok) throw std::logic_error("heat-symbol orientation self-test failed");
}

}  // namespace

HeatSymbolValue heat_symbol(const ResolventSymbol& r, double t, const Vec& x, const Vec& xi) {
    if (t <= 0.0) throw std::invalid_argument("heat symbol requires t > 0");
    orientation_self_test();
    Vec dx(x.size());
    for (size_t i = 0; i < x.size(); ++i) dx[i] = x[i] - r.symbol.base.x[i];
    cplx p2v = r.symbol.p2.eval_xi(xi).evaluate(dx);
    cplx acc{};
    double tp = 1.0, fact = 1.0;
    for (size_t idx = 0; idx < r.pole_terms.size(); ++idx) {
        if (idx > 0) {
            tp *= t;
            fact *= static_cast<double>(idx);
        }
        if (r.pole_terms[idx].nterms() == 0) continue;
        acc += r.pole_terms[idx].eval_xi(xi).evaluate(dx) * (tp / fact);
    }
    return {r.level, t, acc * std::exp(-t * p2v), r.rank};
}

int default_trace_levels(Scenario s) { return s == Scenario::Sphere2 ? 2 : 0; }

namespace {

// Integral over eta of P_k(eta) exp(i v.eta - c |eta|^2) for each level,
// weighted t^{(k-n)/2}, where P_k collects the pole coefficients at the
// symbol base divided by (j-1)!.  Axis moments carry the full Gaussian
// decay; their truncation keeps the discarded mass below 1e-12 of the
// weight, and their two-pass error lands in err.
cplx eta_transform(const std::vector<ResolventSymbol>& levels, double c, const Vec& v,
                   double t, int n, double& err) {
    int pmax = 0;
    for (const auto& r : levels)
        for (const auto& A : r.pole_terms)
            if (A.nterms() > 0) pmax = std::max(pmax, A.top_degree(0.0));
    std::vector<MomentSet> ax;
    for (int a = 0; a < n; ++a) {
        ax.push_back(gaussian_fourier_moments(v[a], c, pmax));
        err = std::max(err, ax.back().error_estimate);
    }
    cplx sum{};
    for (const auto& r : levels) {
        cplx lvl{};
        double fact = 1.0;
        for (size_t idx = 0; idx < r.pole_terms.size(); ++idx) {
            if (idx > 0) fact *= static_cast<double>(idx);
            const PolyJet& A = r.pole_terms[idx];
            if (A.nterms() == 0) continue;
            const MultiIndexSet& m = A.xi_index();
            for (int i = 0; i < m.size(); ++i) {
                cplx cv = A.term(i).value();
                if (cv == cplx{}) continue;
                const auto& al = m.alpha(i);
                cplx mom(1.0, 0.0);
                for (int a = 0; a < n; ++a) mom *= ax[a].m[al[a]];
                lvl += (cv / fact) * mom;
            }
        }
        sum += std::pow(t, 0.5 * (r.level - n)) * lvl;
    }
    return sum;
}

double matrix_trace(const MatD& m) {
    double s = 0.0;
    for (int i = 0; i < m.rows; ++i) s += m(i, i);
    return s;
}

}  // namespace

TraceResult equivariant_trace_parametrix(Scenario s, int j, const Vec& angles, double t, int K) {
    Geometry geom(s);
    if (t <= 0.0) throw std::invalid_argument("trace requires t > 0");
    if (K < 0 || K > kResolventCap) throw std::invalid_argument("trace level cap out of range");
    if (static_cast<int>(angles.size()) != geom.group_dim())
        throw std::invalid_argument("group element has wrong number of angles");

    const int n = geom.dim();
    const double pref = std::pow(two_pi, -n);
    const double rt = std::sqrt(t);
    TraceResult res;
    double moment_err = 0.0;

    if (s != Scenario::Sphere2) {
        // Single flat chart; translations leave the symbol constant, so one
        // expansion at the origin serves every node.  Lattice images beyond
        // the periodic representative are the only omission; each is
        // suppressed like exp(-pi^2/t) relative to the kept term.
        ChartPoint base{0, Vec(n, 0.0)};
        auto levels = resolvent_levels(laplace_symbol(geom, j, base, K), K);
        const int nx = 4;
        double w0 = std::pow(two_pi / nx, n);
        cplx acc{};
        std::vector<int> idx(n, 0);
        for (;;) {
            ChartPoint x{0, Vec(n)};
            for (int a = 0; a < n; ++a) x.x[a] = (idx[a] + 0.5) * two_pi / nx;
            ActionResult moved = geom.act(angles, x);
            Vec delta = geom.periodic_difference(moved.point.x, x.x);
            Vec v(n);
            for (int a = 0; a < n; ++a) v[a] = delta[a] / rt;
            double w = w0 * geom.cutoff(x) * geom.partition(moved.point);
            double trpb = matrix_trace(pullback_matrix(geom, j, angles, x));
            acc += w * trpb * eta_transform(levels, 1.0, v, t, n, moment_err);
            int a = 0;
            while (a < n && ++idx[a] == nx) idx[a++] = 0;
            if (a == n) break;
        }
        res.value = pref * acc;
        res.error_estimate = moment_err;
    } else {
        // Polar grid over the partition support in each chart.  The symbol
        // depends on the radius alone and rotations act on eta through the
        // same rotation, so each radial node shares one expansion and the
        // angular factor enters through the rotated phase vector.
        // The partition profile is flat up to half the support radius; the
        // radial rule splits there so each Gauss piece sees a smooth interior.
        const double rknee = 0.5;
        const double rmax = Geometry::partition_outer_radius;
        auto run = [&](int nr) {
            const Rule1D& gl = gauss_legendre_rule(nr);
            const int na = 8;
            cplx acc{};
            for (int chart = 0; chart < geom.chart_count(); ++chart) {
                for (int seg = 0; seg < 2; ++seg) {
                    double lo = seg == 0 ? 0.0 : rknee;
                    double hi = seg == 0 ? rknee : rmax;
                for (int ir = 0; ir < nr; ++ir) {
                    double r = lo + (gl.x[ir] + 1.0) * 0.5 * (hi - lo);
                    double wr = gl.w[ir] * 0.5 * (hi - lo);
                    ChartPoint xb{chart, {r, 0.0}};
                    auto levels = resolvent_levels(laplace_symbol(geom, j, xb, K), K);
                    double c = geom.conformal_factor(xb);
                    for (int ia = 0; ia < na; ++ia) {
                        double alpha = (ia + 0.5) * two_pi / na;
                        ChartPoint x{chart, {r * std::cos(alpha), r * std::sin(alpha)}};
                        ActionResult moved = geom.act(angles, x);
                        Vec delta = {moved.point.x[0] - x.x[0], moved.point.x[1] - x.x[1]};
                        double rot = alpha + angles[0];
                        double cr = std::cos(rot), sr = std::sin(rot);
                        Vec v = {(cr * delta[0] + sr * delta[1]) / rt,
                                 (-sr * delta[0] + cr * delta[1]) / rt};
                        double w = wr * r * (two_pi / na) * geom.cutoff(x) *
                                   geom.partition(moved.point);
                        if (w == 0.0) continue;
                        double trpb = matrix_trace(pullback_matrix(geom, j, angles, x));
                        acc += w * trpb * eta_transform(levels, c, v, t, n, moment_err);
                    }
                }
                }
            }
            return acc;
        };
        cplx coarse = run(24);
        cplx fine = run(36);
        res.value = pref * fine;
        res.error_estimate = std::max(moment_err, std::abs(fine - coarse) * pref);
    }

    double tol = std::max(1e-7, 1e-6 * std::abs(res.value));
    res.converged = res.error_estimate <= tol;
    if (!res.converged)
        res.flag = "quadrature refinement estimate " + std::to_string(res.error_estimate) +
                   " above tolerance " + std::to_string(tol);
    return res;
}

}  // namespace leflab
