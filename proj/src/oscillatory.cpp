#include "leflab/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "leflab/quadrature.hpp"
#include "leflab/fitting.hpp"

namespace leflab {

namespace {

constexpr double kSphereParamRadius = 4.0;   // radial extent of the critical charts
constexpr double kSphereParamSpread = 12.0;  // cotangent-parameter extent
constexpr double kContractionRatio = 0.92;   // collar differences must shrink this fast

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void check_point(const Geometry& geom, const PhasePoint& p) {
    if (static_cast<int>(p.x.size()) != geom.dim() ||
        static_cast<int>(p.xi.size()) != geom.dim()) {
        throw std::invalid_argument("phase point has wrong chart or cotangent dimension");
    }
    if (static_cast<int>(p.angles.size()) != geom.group_dim()) {
        throw std::invalid_argument("phase point has wrong group dimension");
    }
}

// gx - x in chart coordinates, with the periodic representative on flat charts.
Vec displacement(const Geometry& geom, const ChartPoint& src, const ChartPoint& img) {
    if (geom.scenario() == Scenario::Sphere2) {
        Vec d(src.x.size());
        for (size_t i = 0; i < d.size(); ++i) d[i] = img.x[i] - src.x[i];
        return d;
    }
    return geom.periodic_difference(img.x, src.x);
}

MatD restrict_to_frame(const MatD& h, const std::vector<Vec>& frame) {
    int m = static_cast<int>(frame.size());
    MatD t(m, m);
    for (int a = 0; a < m; ++a) {
        for (int b = a; b < m; ++b) {
            double s = 0.0;
            for (int i = 0; i < h.rows; ++i) {
                double hi = 0.0;
                for (int j = 0; j < h.cols; ++j) hi += h(i, j) * frame[b][j];
                s += frame[a][i] * hi;
            }
            t(a, b) = s;
            t(b, a) = s;
        }
    }
    return t;
}

int signature_of(const MatD& t) {
    Vec ev = symmetric_eigenvalues(t);
    double scale = 0.0;
    for (double e : ev) scale = std::max(scale, std::abs(e));
    double tol = 1e-9 * scale + 1e-300;
    int sig = 0;
    for (double e : ev) {
        if (e > tol) ++sig;
        if (e < -tol) --sig;
    }
    return sig;
}

CriticalChart flat_chart(int n, int d) {
    CriticalChart ch;
    ch.chart = 0;
    ch.dim = n;
    ch.lo = Vec(n, 0.0);
    ch.hi = Vec(n, two_pi);
    ch.periodic.assign(n, true);
    ch.panel_breaks.assign(n, Vec{});
    ch.embed = [n, d](const Vec& u) {
        PhasePoint p;
        p.x = u;
        p.xi = Vec(n, 0.0);
        p.angles = Vec(d, 0.0);
        return p;
    };
    ch.density = [](const Vec&) { return 1.0; };
    ch.normal_frame = [n, d](const Vec&) {
        std::vector<Vec> frame;
        for (int k = 0; k < n + d; ++k) {
            Vec v(2 * n + d, 0.0);
            v[n + k] = 1.0;
            frame.push_back(v);
        }
        return frame;
    };
    ch.singular_distance = [](const Vec&) {
        return std::numeric_limits<double>::infinity();
    };
    return ch;
}

CriticalChart sphere_chart(int gamma) {
    CriticalChart ch;
    ch.chart = gamma;
    ch.dim = 3;
    ch.lo = {0.0, 0.0, -kSphereParamSpread};
    ch.hi = {kSphereParamRadius, two_pi, kSphereParamSpread};
    ch.periodic = {false, true, false};
    ch.panel_breaks = {Vec{0.5, 2.0}, Vec{}, Vec{-2.0, 2.0}};
    ch.collar_axis = 0;
    ch.embed = [gamma](const Vec& u) {
        double ca = std::cos(u[1]);
        double sa = std::sin(u[1]);
        PhasePoint p;
        p.chart = gamma;
        p.x = {u[0] * ca, u[0] * sa};
        p.xi = {u[2] * ca, u[2] * sa};
        p.angles = {0.0};
        return p;
    };
    ch.density = [](const Vec& u) { return std::hypot(u[0], u[2]); };
    ch.normal_frame = [](const Vec& u) {
        double ca = std::cos(u[1]);
        double sa = std::sin(u[1]);
        double w = std::hypot(u[0], u[2]);
        Vec uhat = {u[2] * sa / w, -u[2] * ca / w, -u[0] * sa / w, u[0] * ca / w, 0.0};
        Vec ephi = {0.0, 0.0, 0.0, 0.0, 1.0};
        return std::vector<Vec>{uhat, ephi};
    };
    ch.singular_distance = [](const Vec& u) { return u[0]; };
    return ch;
}

// Generic odometer over a list of per-axis node counts.
bool advance(std::vector<int>& idx, const std::vector<int>& count) {
    for (size_t a = 0; a < idx.size(); ++a) {
        if (++idx[a] < count[a]) return true;
        idx[a] = 0;
    }
    return false;
}

std::string format_two(const char* fmt, double a, double b) {
    char buf[192];
    std::snprintf(buf, sizeof(buf), fmt, a, b);
    return buf;
}

}  // namespace

double phase_value(Scenario s, const PhasePoint& p) {
    Geometry geom(s);
    check_point(geom, p);
    ChartPoint cp{p.chart, p.x};
    ActionResult ar = geom.act(p.angles, cp);
    return dot(displacement(geom, cp, ar.point), p.xi);
}

PhaseGradient phase_eval_grad(Scenario s, const PhasePoint& p) {
    Geometry geom(s);
    check_point(geom, p);
    int n = geom.dim();
    int d = geom.group_dim();
    ChartPoint cp{p.chart, p.x};
    ActionResult ar = geom.act(p.angles, cp);

    PhaseGradient g;
    g.dxi = displacement(geom, cp, ar.point);
    g.value = dot(g.dxi, p.xi);
    g.dx.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            g.dx[i] += (ar.differential(j, i) - (i == j ? 1.0 : 0.0)) * p.xi[j];
        }
    }
    g.dangles.assign(d, 0.0);
    for (int a = 0; a < d; ++a) {
        g.dangles[a] = dot(geom.killing_field(a, ar.point), p.xi);
    }
    return g;
}

MatD phase_hessian(Scenario s, const PhasePoint& p) {
    Geometry geom(s);
    check_point(geom, p);
    int n = geom.dim();
    int d = geom.group_dim();
    int m = 2 * n + d;
    ChartPoint cp{p.chart, p.x};
    ActionResult ar = geom.act(p.angles, cp);

    MatD h(m, m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double v = ar.differential(j, i) - (i == j ? 1.0 : 0.0);
            h(i, n + j) = v;
            h(n + j, i) = v;
        }
    }
    for (int a = 0; a < d; ++a) {
        Vec field = geom.killing_field(a, ar.point);
        MatD dfield = geom.killing_derivative(a, ar.point);
        MatD mixed = dfield * ar.differential;
        for (int i = 0; i < n; ++i) {
            h(n + i, 2 * n + a) = field[i];
            h(2 * n + a, n + i) = field[i];
            double v = 0.0;
            for (int j = 0; j < n; ++j) v += mixed(j, i) * p.xi[j];
            h(i, 2 * n + a) = v;
            h(2 * n + a, i) = v;
        }
        for (int b = 0; b < d; ++b) {
            Vec fb = geom.killing_field(b, ar.point);
            double v = 0.0;
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) v += p.xi[i] * dfield(i, j) * fb[j];
            }
            h(2 * n + a, 2 * n + b) = v;
        }
    }
    return h;
}

CriticalSet critical_chart(Scenario s) {
    Geometry geom(s);
    CriticalSet cs;
    int kappa = geom.orbit_info().principal_orbit_dim;
    cs.codim = 2 * kappa;
    switch (s) {
        case Scenario::Circle:
            cs.charts.push_back(flat_chart(1, 1));
            break;
        case Scenario::Torus2:
            cs.charts.push_back(flat_chart(2, 2));
            break;
        case Scenario::Sphere2:
            cs.charts.push_back(sphere_chart(0));
            cs.charts.push_back(sphere_chart(1));
            cs.singular_stratum =
                "chart origins (the rotation poles), carrying every cotangent "
                "vector and every group element";
            break;
    }
    cs.dim = cs.charts.front().dim;
    return cs;
}

HessianReport transversal_hessian(Scenario s, const CriticalChart& chart,
                                  const Vec& params, double margin) {
    if (static_cast<int>(params.size()) != chart.dim) {
        throw std::invalid_argument("parameter count does not match the critical chart");
    }
    double dist = chart.singular_distance(params);
    if (!(dist > margin)) {
        throw std::invalid_argument(format_two(
            "critical point at singular distance %.3g, inside the margin %.3g", dist,
            margin));
    }
    HessianReport rep;
    rep.point = chart.embed(params);
    rep.transversal = restrict_to_frame(phase_hessian(s, rep.point),
                                        chart.normal_frame(params));
    rep.abs_det = std::abs(det(rep.transversal));
    rep.signature = signature_of(rep.transversal);
    return rep;
}

namespace {

// Tensor quadrature of a / sqrt|det H_N| over one critical chart.  eps_lo
// replaces the lower endpoint of the collar axis when nonnegative.
double chart_quadrature(Scenario s, const Amplitude& a, const CriticalChart& ch,
                        double eps_lo, double node_scale, const CollarOptions& o) {
    std::vector<std::vector<double>> nodes(ch.dim), weights(ch.dim);
    for (int ax = 0; ax < ch.dim; ++ax) {
        double lo = ch.lo[ax];
        if (ax == ch.collar_axis && eps_lo >= 0.0) lo = eps_lo;
        if (ch.periodic[ax]) {
            int nn = std::max(4, static_cast<int>(std::lround(o.periodic_nodes * node_scale)));
            double h = (ch.hi[ax] - lo) / nn;
            for (int k = 0; k < nn; ++k) {
                nodes[ax].push_back(lo + (k + 0.5) * h);
                weights[ax].push_back(h);
            }
            continue;
        }
        Vec knots{lo};
        for (double b : ch.panel_breaks[ax]) {
            if (b > lo && b < ch.hi[ax]) knots.push_back(b);
        }
        knots.push_back(ch.hi[ax]);
        int nn = std::max(4, static_cast<int>(std::lround(o.nodes * node_scale)));
        const Rule1D& rule = gauss_legendre_rule(quadrature_ladder(nn));
        for (size_t pnl = 0; pnl + 1 < knots.size(); ++pnl) {
            double mid = 0.5 * (knots[pnl] + knots[pnl + 1]);
            double rad = 0.5 * (knots[pnl + 1] - knots[pnl]);
            for (size_t k = 0; k < rule.x.size(); ++k) {
                nodes[ax].push_back(mid + rad * rule.x[k]);
                weights[ax].push_back(rad * rule.w[k]);
            }
        }
    }

    std::vector<int> count(ch.dim), idx(ch.dim, 0);
    for (int ax = 0; ax < ch.dim; ++ax) count[ax] = static_cast<int>(nodes[ax].size());
    Vec params(ch.dim);
    double sum = 0.0;
    do {
        double w = 1.0;
        for (int ax = 0; ax < ch.dim; ++ax) {
            params[ax] = nodes[ax][idx[ax]];
            w *= weights[ax][idx[ax]];
        }
        double av = a.eval(ch.embed(params));
        if (av == 0.0) continue;
        MatD t = restrict_to_frame(phase_hessian(s, ch.embed(params)),
                                   ch.normal_frame(params));
        if (signature_of(t) != 0) {
            throw std::logic_error(
                "nonzero transversal signature at a critical-set node; the "
                "phase-factor-free normalization assumes signature zero");
        }
        double adet = std::abs(det(t));
        if (!(adet > 1e-250)) {
            throw std::logic_error("degenerate transversal Hessian on the regular critical set");
        }
        sum += w * av * ch.density(params) / std::sqrt(adet);
    } while (advance(idx, count));
    return sum;
}

}  // namespace

CollarResult leading_coefficient(Scenario s, const Amplitude& a,
                                 const CollarOptions& opts) {
    if (!a.eval) throw std::invalid_argument("amplitude evaluation callback required");
    if (opts.levels < 1) throw std::invalid_argument("collar extrapolation needs at least one level");
    if (!(opts.eps > 0.0)) throw std::invalid_argument("collar radius must be positive");
    CriticalSet cs = critical_chart(s);

    bool has_collar = false;
    for (const auto& ch : cs.charts) has_collar = has_collar || ch.collar_axis >= 0;

    auto total = [&](double eps, double scale) {
        double v = 0.0;
        for (const auto& ch : cs.charts) {
            v += chart_quadrature(s, a, ch, ch.collar_axis >= 0 ? eps : -1.0, scale, opts);
        }
        return v;
    };

    CollarResult res;
    if (!has_collar) {
        double fine = total(-1.0, 1.5);
        double coarse = total(-1.0, 1.0);
        res.value = fine;
        res.error = std::abs(fine - coarse);
        return res;
    }

    Vec vals(opts.levels);
    double eps = opts.eps;
    for (int k = 0; k < opts.levels; ++k) {
        vals[k] = total(eps, 1.5);
        eps *= 0.5;
    }
    double node_err = std::abs(vals.back() - total(2.0 * eps, 1.0));

    if (opts.levels == 1) {
        res.value = vals[0];
        res.error = node_err;
        res.converged = false;
        res.flag = "single collar level; no extrapolation performed";
        return res;
    }

    Vec diffs(opts.levels - 1);
    for (int k = 0; k + 1 < opts.levels; ++k) diffs[k] = vals[k + 1] - vals[k];
    bool contracting = true;
    for (size_t k = 1; k < diffs.size(); ++k) {
        double allowance = kContractionRatio * std::abs(diffs[k - 1]) +
                           1e-13 * (1.0 + std::abs(vals.back()));
        contracting = contracting && std::abs(diffs[k]) <= allowance;
    }
    // Richardson tableau over the power ladder eps^1, eps^2, ...; depth j
    // cancels the j-th power, covering both parities of the collar error.
    std::vector<Vec> tab{vals};
    for (int j = 1; j < opts.levels; ++j) {
        double p = std::pow(2.0, j);
        Vec next(opts.levels - j);
        for (int k = 0; k + j < opts.levels; ++k) {
            next[k] = (p * tab[j - 1][k + 1] - tab[j - 1][k]) / (p - 1.0);
        }
        tab.push_back(std::move(next));
    }
    res.value = tab[opts.levels - 1][0];
    double rich_err = std::abs(tab[opts.levels - 1][0] - tab[opts.levels - 2][0]);
    res.error = rich_err + node_err;
    res.converged = contracting;
    if (!contracting) {
        res.flag = "collar sums fail to contract under halving; the integrand "
                   "looks non-integrable at the singular stratum";
    }
    return res;
}

namespace {

struct XCell {
    ChartPoint p;
    double w = 0.0;
};

std::vector<std::vector<XCell>> build_x_cells(const Geometry& geom,
                                              const OscOptions& o, double scale) {
    std::vector<std::vector<XCell>> cells(geom.chart_count());
    int n = geom.dim();
    if (geom.scenario() != Scenario::Sphere2) {
        int nn = std::max(2, static_cast<int>(std::lround(o.x_nodes * scale)));
        double h = two_pi / nn;
        std::vector<int> count(n, nn), idx(n, 0);
        do {
            XCell c;
            c.p.chart = 0;
            c.p.x.resize(n);
            c.w = 1.0;
            for (int ax = 0; ax < n; ++ax) {
                c.p.x[ax] = (idx[ax] + 0.5) * h;
                c.w *= h;
            }
            cells[0].push_back(c);
        } while (advance(idx, count));
        return cells;
    }

    Vec knots{0.0};
    if (o.x_radius > 0.5) knots.push_back(0.5);
    knots.push_back(o.x_radius);
    int nr = std::max(4, static_cast<int>(std::lround(o.radial_nodes * scale)));
    const Rule1D& rule = gauss_legendre_rule(quadrature_ladder(nr));
    int na = std::max(4, static_cast<int>(std::lround(o.x_nodes * scale)));
    double ha = two_pi / na;
    for (int gamma = 0; gamma < geom.chart_count(); ++gamma) {
        for (size_t pnl = 0; pnl + 1 < knots.size(); ++pnl) {
            double mid = 0.5 * (knots[pnl] + knots[pnl + 1]);
            double rad = 0.5 * (knots[pnl + 1] - knots[pnl]);
            for (size_t k = 0; k < rule.x.size(); ++k) {
                double r = mid + rad * rule.x[k];
                double wr = rad * rule.w[k] * r * ha;  // chart-Lebesgue r dr dbeta
                for (int j = 0; j < na; ++j) {
                    double beta = (j + 0.5) * ha;
                    XCell c;
                    c.p.chart = gamma;
                    c.p.x = {r * std::cos(beta), r * std::sin(beta)};
                    c.w = wr;
                    cells[gamma].push_back(c);
                }
            }
        }
    }
    return cells;
}

std::vector<std::pair<Vec, double>> build_angle_cells(const Geometry& geom,
                                                      const OscOptions& o,
                                                      double mu, double scale) {
    int d = geom.group_dim();
    double extent = geom.scenario() == Scenario::Sphere2 ? std::max(1.0, o.x_radius) : 1.0;
    int nn = static_cast<int>(std::ceil(o.angle_resolution * extent * scale / mu));
    nn = std::clamp(nn, 16, 6000);
    double h = two_pi / nn;
    std::vector<std::pair<Vec, double>> cells;
    std::vector<int> count(d, nn), idx(d, 0);
    do {
        Vec phi(d);
        double w = 1.0;
        for (int ax = 0; ax < d; ++ax) {
            phi[ax] = (idx[ax] + 0.5) * h;
            w *= h;
        }
        cells.emplace_back(std::move(phi), w);
    } while (advance(idx, count));
    return cells;
}

struct PassResult {
    cplx sum{};
    double moment_err = 0.0;
    long long evals = 0;
};

PassResult run_moment(const Geometry& geom, const Amplitude& a, double mu,
                      const OscOptions& o, double scale) {
    auto cells = build_x_cells(geom, o, scale);
    auto phis = build_angle_cells(geom, o, mu, scale);
    int n = geom.dim();
    PassResult out;
    PhasePoint p;
    p.xi = Vec(n, 0.0);
    for (const auto& phi : phis) {
        for (int gamma = 0; gamma < geom.chart_count(); ++gamma) {
            for (const auto& cell : cells[gamma]) {
                p.chart = cell.p.chart;
                p.x = cell.p.x;
                p.angles = phi.first;
                double base = a.gauss_base(p);
                ++out.evals;
                if (base == 0.0) continue;
                double c = a.gauss_decay(p);
                if (!(c > 0.0)) {
                    throw std::invalid_argument(
                        "separable amplitude requires a positive Gaussian decay");
                }
                ActionResult ar = geom.act(phi.first, cell.p);
                Vec delta = displacement(geom, cell.p, ar.point);
                double freq2 = 0.0;
                for (int ax = 0; ax < n; ++ax) freq2 += sqr(delta[ax] / mu);
                double expo = freq2 / (4.0 * c);
                if (expo > 45.0) {
                    // Moment product below e^{-45} of its scale; skip the
                    // quadrature and book the discarded bound instead.
                    out.moment_err += std::abs(cell.w * phi.second * base) *
                                      std::pow(pi / c, 0.5 * n) * std::exp(-expo);
                    continue;
                }
                cplx prod{1.0, 0.0};
                Vec mags(n), errs(n);
                for (int ax = 0; ax < n; ++ax) {
                    MomentSet ms = gaussian_fourier_moments(delta[ax] / mu, c, 0);
                    prod *= ms.m[0];
                    mags[ax] = std::abs(ms.m[0]);
                    errs[ax] = ms.error_estimate;
                }
                double w = cell.w * phi.second;
                out.sum += w * base * prod;
                double cross = 0.0;
                for (int ax = 0; ax < n; ++ax) {
                    double term = errs[ax];
                    for (int bx = 0; bx < n; ++bx) {
                        if (bx != ax) term *= mags[bx];
                    }
                    cross += term;
                }
                out.moment_err += std::abs(w * base) * cross;
            }
        }
    }
    return out;
}

PassResult run_direct(const Geometry& geom, const Amplitude& a, double mu,
                      const OscOptions& o, double scale, double cap, bool dry) {
    auto cells = build_x_cells(geom, o, scale);
    auto phis = build_angle_cells(geom, o, mu, scale);
    int n = geom.dim();
    double rr = o.xi_radius;
    int margin = std::max(6, static_cast<int>(std::lround(o.xi_margin_nodes * scale)));
    PassResult out;
    PhasePoint p;
    p.xi = Vec(n, 0.0);
    std::vector<const Rule1D*> rules(n);
    std::vector<int> count(n), idx(n);
    for (const auto& phi : phis) {
        for (int gamma = 0; gamma < geom.chart_count(); ++gamma) {
            for (const auto& cell : cells[gamma]) {
                ActionResult ar = geom.act(phi.first, cell.p);
                Vec delta = displacement(geom, cell.p, ar.point);
                long long inner = 1;
                for (int ax = 0; ax < n; ++ax) {
                    double need = 1.05 * rr * std::abs(delta[ax]) / mu;
                    int nn = static_cast<int>(std::ceil((need + margin) * cap));
                    nn = quadrature_ladder(std::max(8, nn));
                    rules[ax] = &gauss_legendre_rule(nn);
                    count[ax] = nn;
                    inner *= nn;
                }
                out.evals += inner;
                if (dry) continue;

                p.chart = cell.p.chart;
                p.x = cell.p.x;
                p.angles = phi.first;
                cplx cell_sum{};
                std::fill(idx.begin(), idx.end(), 0);
                do {
                    double wxi = 1.0;
                    double theta = 0.0;
                    for (int ax = 0; ax < n; ++ax) {
                        double z = rr * rules[ax]->x[idx[ax]];
                        p.xi[ax] = z;
                        wxi *= rr * rules[ax]->w[idx[ax]];
                        theta += delta[ax] * z;
                    }
                    double av = a.eval(p);
                    if (av != 0.0) cell_sum += wxi * av * std::polar(1.0, theta / mu);
                } while (advance(idx, count));
                out.sum += cell.w * phi.second * cell_sum;
            }
        }
    }
    return out;
}

}  // namespace

OscResult oscillatory_integral(Scenario s, const Amplitude& a, double mu,
                               const OscOptions& opts) {
    if (!(mu > 0.0)) throw std::invalid_argument("oscillation parameter must be positive");
    if (!a.eval) throw std::invalid_argument("amplitude evaluation callback required");
    Geometry geom(s);

    OscResult res;
    if (a.separable() && !opts.force_direct) {
        PassResult fine = run_moment(geom, a, mu, opts, 1.0);
        PassResult coarse = run_moment(geom, a, mu, opts, 2.0 / 3.0);
        res.value = fine.sum;
        res.error = std::abs(fine.sum - coarse.sum) + fine.moment_err;
        res.evaluations = fine.evals + coarse.evals;
    } else {
        long long want = run_direct(geom, a, mu, opts, 1.0, 1.0, true).evals +
                         run_direct(geom, a, mu, opts, 2.0 / 3.0, 1.0, true).evals;
        double cap = 1.0;
        if (static_cast<double>(want) > opts.budget) {
            cap = opts.budget / static_cast<double>(want);
            res.flag = format_two(
                "node budget %.3g short of the %.3g evaluations needed; "
                "resolution capped, estimate unreliable",
                opts.budget, static_cast<double>(want));
        }
        PassResult fine = run_direct(geom, a, mu, opts, 1.0, cap, false);
        PassResult coarse = run_direct(geom, a, mu, opts, 2.0 / 3.0, cap, false);
        res.value = fine.sum;
        res.error = std::abs(fine.sum - coarse.sum);
        res.evaluations = fine.evals + coarse.evals;
    }

    double tol = std::max(opts.atol, opts.rtol * std::abs(res.value));
    res.converged = res.flag.empty() && res.error <= tol;
    if (res.flag.empty() && !res.converged) {
        res.flag = format_two("quadrature refinement estimate %.3g above tolerance %.3g",
                              res.error, tol);
    }
    return res;
}

ExpansionFit expansion_fit(Scenario s, const Amplitude& a, const Vec& mus,
                           const OscOptions& osc, const CollarOptions& collar) {
    if (mus.size() < 3) {
        throw std::invalid_argument("expansion fit needs at least three mu samples");
    }
    for (double mu : mus) {
        if (!(mu > 0.0)) throw std::invalid_argument("mu grid must be positive");
    }
    Geometry geom(s);
    OrbitData orbit = geom.orbit_info();
    int kappa = orbit.principal_orbit_dim;

    ExpansionFit fit;
    fit.mus = mus;
    fit.log_power = orbit.isotropy_chain_length - 1;
    for (double mu : mus) {
        OscResult r = oscillatory_integral(s, a, mu, osc);
        fit.values.push_back(r.value);
        fit.errors.push_back(r.error);
        fit.converged = fit.converged && r.converged;
        if (fit.flag.empty()) fit.flag = r.flag;
    }
    CollarResult lc = leading_coefficient(s, a, collar);
    fit.l0 = lc.value;
    fit.l0_error = lc.error;
    fit.converged = fit.converged && lc.converged;
    if (fit.flag.empty()) fit.flag = lc.flag;

    size_t m = mus.size();
    Vec mags(m);
    for (size_t i = 0; i < m; ++i) {
        mags[i] = std::max(std::abs(fit.values[i]), 1e-300);
    }
    fit.fitted_exponent = fit_leading_order(fit.mus, mags).exponent;

    Vec ones(m, 1.0), corr(m), norm(m);
    for (size_t i = 0; i < m; ++i) {
        double lead = std::pow(two_pi * mus[i], kappa);
        norm[i] = fit.values[i].real() / lead;
        corr[i] = mus[i] * std::pow(std::log(1.0 / mus[i]), fit.log_power);
    }
    fit.fitted_coefficient = least_squares({ones, corr}, norm)[0];

    fit.remainders.resize(m);
    for (size_t i = 0; i < m; ++i) {
        double lead = std::pow(two_pi * mus[i], kappa);
        fit.remainders[i] = std::max(std::abs(fit.values[i] - lead * fit.l0), 1e-300);
    }
    fit.remainder_exponent =
        fit_leading_order(fit.mus, fit.remainders, fit.log_power).exponent;
    return fit;
}

}  // namespace leflab
