#include "leflab/lefschetz.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "leflab/complexes.hpp"
#include "leflab/fitting.hpp"
#include "leflab/oscillatory.hpp"
#include "leflab/parametrix.hpp"
#include "leflab/spectral.hpp"

namespace leflab {
namespace {

// Angles closer to a full turn than this count as the identity component.
constexpr double kIdentityTol = 1e-12;
// Roundoff allowance attached to otherwise exact routes, so that error
// estimates stay meaningful in cross-method comparisons.
constexpr double kRoundoffFloor = 1e-13;

double matrix_trace(const MatD& m) {
    double s = 0.0;
    for (int i = 0; i < m.rows; ++i) s += m(i, i);
    return s;
}

bool whole_turn(double angle) {
    return std::abs(principal_angle(angle)) < kIdentityTol;
}

void check_group_element(const Geometry& geom, const Vec& angles) {
    if (static_cast<int>(angles.size()) != geom.group_dim()) {
        throw std::invalid_argument("group element needs one angle per group dimension");
    }
}

void check_character(const Geometry& geom, const std::vector<int>& rho) {
    if (static_cast<int>(rho.size()) != geom.group_dim()) {
        throw std::invalid_argument("character index needs one entry per group angle");
    }
}

std::vector<int> validated_degrees(const Geometry& geom, const std::vector<int>& wanted) {
    int n = geom.dim();
    if (wanted.empty()) {
        std::vector<int> all(n + 1);
        for (int j = 0; j <= n; ++j) all[j] = j;
        return all;
    }
    std::vector<bool> seen(n + 1, false);
    for (int j : wanted) {
        if (j < 0 || j > n) {
            throw std::invalid_argument("form degree outside 0..dim");
        }
        if (seen[j]) {
            throw std::invalid_argument("duplicate form degree in the selection");
        }
        seen[j] = true;
    }
    return wanted;
}

// Fixed points of the element, or the name of the fixed submanifold when it
// has positive dimension and the transversality hypothesis fails.
struct FixedSet {
    bool degenerate = false;
    std::string fixed_set_name;
    std::vector<ChartPoint> points;
};

FixedSet fixed_set(const Geometry& geom, const Vec& angles) {
    FixedSet out;
    switch (geom.scenario()) {
        case Scenario::Circle:
            if (whole_turn(angles[0])) {
                out.degenerate = true;
                out.fixed_set_name = "the whole circle";
            }
            break;
        case Scenario::Torus2:
            // A translation with any nonzero component moves every point.
            if (whole_turn(angles[0]) && whole_turn(angles[1])) {
                out.degenerate = true;
                out.fixed_set_name = "the whole torus";
            }
            break;
        case Scenario::Sphere2:
            if (whole_turn(angles[0])) {
                out.degenerate = true;
                out.fixed_set_name = "the whole sphere";
            } else {
                // The two rotation poles, one at each chart origin.
                out.points.push_back(ChartPoint{0, Vec(2, 0.0)});
                out.points.push_back(ChartPoint{1, Vec(2, 0.0)});
            }
            break;
    }
    return out;
}

cplx fixed_degree_term(const Geometry& geom, int j, const Vec& angles,
                       const FixedSet& fs) {
    cplx term = 0.0;
    for (const ChartPoint& p : fs.points) {
        MatD d = geom.act(angles, p).differential;
        MatD one_minus(d.rows, d.cols);
        for (int r = 0; r < d.rows; ++r) {
            for (int c = 0; c < d.cols; ++c) {
                one_minus(r, c) = (r == c ? 1.0 : 0.0) - d(r, c);
            }
        }
        double denom = std::abs(det(one_minus));
        term += matrix_trace(pullback_matrix(geom, j, angles, p)) / denom;
    }
    return term;
}

std::string formatted(const char* fmt, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), fmt, a, b);
    return buf;
}

// One degree of the equivariant heat trace by the requested engine, with a
// silent eigenvalue fallback when the chart symbol is missing; callers note
// the fallback once per degree.
cplx traced_degree(const Geometry& geom, int j, const Vec& angles, double t,
                   HeatEngine engine, const HeatOptions& opts, double& err,
                   long& calls) {
    Scenario s = geom.scenario();
    ++calls;
    if (engine == HeatEngine::Parametrix && symbol_available(s, j)) {
        int levels = opts.parametrix_levels < 0 ? default_trace_levels(s)
                                                : opts.parametrix_levels;
        TraceResult r = equivariant_trace_parametrix(s, j, angles, t, levels);
        err += r.error_estimate;
        return r.value;
    }
    HeatSum h = heat_character_sum(s, j, angles, t, opts.spectral_cutoff);
    err += h.tail_bound;
    return h.value;
}

// Per-degree amplitude restricted to the critical set: partition function
// times the pullback trace times the level-zero heat symbol at unit time,
// times the conjugated character.  The critical parametrizations pin the
// group slot at the identity, where the conjugated character is real.
Amplitude restricted_amplitude(const Geometry& geom, int j,
                               const std::vector<int>& rho) {
    int n = geom.dim();
    LocalSymbol sym = laplace_symbol(geom, j, ChartPoint{0, Vec(n, 0.0)}, 0);
    ResolventSymbol level0 = resolvent_recursion(sym, 0);
    Vec rho_d(rho.begin(), rho.end());
    Amplitude a;
    a.eval = [&geom, j, level0, rho_d, n](const PhasePoint& q) {
        ChartPoint p{q.chart, q.x};
        double twist = matrix_trace(pullback_matrix(geom, j, q.angles, p));
        double e0 = heat_symbol(level0, 1.0, Vec(n, 0.0), q.xi).scalar.real();
        double phase = 0.0;
        for (size_t a_idx = 0; a_idx < rho_d.size(); ++a_idx) {
            phase += rho_d[a_idx] * q.angles[a_idx];
        }
        return geom.partition(p) * twist * e0 * std::cos(phase);
    };
    return a;
}

// Degree-zero integral over the zero-momentum set, weighted by the trivial
// multiplicity and the group-to-orbit volume ratio.  On the flat scenarios
// the zero-momentum set is the vanishing cotangent section, so this is a
// periodic position integral; the half-shifted trapezoid is exact for it.
double orbit_reduced_value(const Geometry& geom, const std::vector<int>& rho) {
    int n = geom.dim();
    const int nodes = 16;
    double h = two_pi / nodes;
    LocalSymbol sym = laplace_symbol(geom, 0, ChartPoint{0, Vec(n, 0.0)}, 0);
    ResolventSymbol level0 = resolvent_recursion(sym, 0);
    Vec zero(n, 0.0);
    std::vector<int> idx(n, 0);
    double total = 0.0;
    while (true) {
        ChartPoint p{0, Vec(n)};
        for (int i = 0; i < n; ++i) p.x[i] = (idx[i] + 0.5) * h;
        double e0 = heat_symbol(level0, 1.0, zero, zero).scalar.real();
        total += geom.partition(p) * e0 / geom.orbit_volume(p, zero);
        int i = 0;
        for (; i < n; ++i) {
            if (++idx[i] < nodes) break;
            idx[i] = 0;
        }
        if (i == n) break;
    }
    total *= std::pow(h, n);
    double mult = geom.orbit_info().trivial_multiplicity(rho);
    return mult * geom.group_volume() * total;
}

LefschetzReport exact_constant_term(const Geometry& geom,
                                    const std::vector<int>& rho,
                                    const ConstantTermOptions& opts) {
    int n = geom.dim();
    int kappa = geom.orbit_info().principal_orbit_dim;
    if (kappa != n) {
        throw std::invalid_argument(
            "exact constant term needs principal orbits of full dimension; "
            "this scenario has lower-dimensional orbits, use the extraction mode");
    }
    LefschetzReport rep;
    rep.scenario = geom.scenario();
    rep.method = "constant-term";
    rep.rho = rho;
    rep.degrees = validated_degrees(geom, opts.degrees);
    double scale = std::pow(two_pi, kappa - n) / geom.group_volume();
    for (int j : rep.degrees) {
        Amplitude amp = restricted_amplitude(geom, j, rho);
        CollarResult q = leading_coefficient(geom.scenario(), amp);
        if (!q.converged) {
            rep.notes.push_back("degree " + std::to_string(j) +
                                " critical-set integral flagged: " + q.flag);
        }
        rep.degree_terms.push_back(cplx(q.value * scale, 0.0));
        rep.error += q.error * scale;
        if (j == 0) {
            double reduced = orbit_reduced_value(geom, rho);
            double diff = std::abs(reduced - q.value);
            if (diff > 1e-6) {
                throw std::logic_error(formatted(
                    "orbit-reduced value %.12g disagrees with the "
                    "critical-set integral %.12g", reduced, q.value));
            }
            rep.notes.push_back(formatted(
                "degree 0 orbit-reduced route agrees with the critical-set "
                "integral within %.1e (values near %.6g)", diff, q.value));
        }
    }
    rep.value = signed_degree_sum(rep.degrees, rep.degree_terms);
    rep.error += kRoundoffFloor * (1.0 + std::abs(rep.value));
    return rep;
}

LefschetzReport extraction_constant_term(const Geometry& geom,
                                         const std::vector<int>& rho,
                                         const ConstantTermOptions& opts) {
    LefschetzReport rep;
    rep.scenario = geom.scenario();
    rep.method = "t-extraction";
    rep.rho = rho;
    rep.degrees = validated_degrees(geom, opts.degrees);
    Vec ts = opts.t_grid.empty() ? Vec{0.08, 0.11, 0.15, 0.19, 0.23, 0.27}
                                 : opts.t_grid;
    // Four fitted powers; one extra sample keeps the fit overdetermined so
    // the residual carries information.
    if (ts.size() < 5) {
        throw std::invalid_argument("extraction needs at least five heat times");
    }
    for (double t : ts) {
        if (!(t > 0.0)) throw std::invalid_argument("heat times must be positive");
    }
    Vec powers{-0.5, 0.0, 0.5, 1.0};
    Scenario s = geom.scenario();
    for (int j : rep.degrees) {
        if (opts.engine == HeatEngine::Parametrix && !symbol_available(s, j)) {
            rep.notes.push_back("degree " + std::to_string(j) +
                                " has no chart symbol; eigenvalue sum substituted");
        }
        Vec yre(ts.size()), yim(ts.size());
        double engine_err = 0.0;
        long calls = 0;
        for (size_t i = 0; i < ts.size(); ++i) {
            cplx avg = geom.group_average(
                [&](const Vec& g) {
                    return traced_degree(geom, j, g, ts[i], opts.engine,
                                         opts.heat, engine_err, calls);
                },
                rho, opts.nodes_per_angle);
            yre[i] = avg.real();
            yim[i] = avg.imag();
        }
        Vec cre = fit_power_basis(ts, yre, powers);
        Vec cim = fit_power_basis(ts, yim, powers);
        rep.degree_terms.push_back(cplx(cre[1], cim[1]));
        double residual = 0.0;
        for (size_t i = 0; i < ts.size(); ++i) {
            double mre = 0.0, mim = 0.0;
            for (size_t k = 0; k < powers.size(); ++k) {
                double b = std::pow(ts[i], powers[k]);
                mre += cre[k] * b;
                mim += cim[k] * b;
            }
            residual = std::max(residual, std::hypot(yre[i] - mre, yim[i] - mim));
        }
        rep.error += residual + (calls > 0 ? engine_err / double(calls) : 0.0);
    }
    rep.notes.push_back(formatted(
        "constant term fitted over %.0f heat times in [%.3g, ...] against "
        "powers -1/2, 0, 1/2, 1 of t", double(ts.size()), ts[0]));
    rep.value = signed_degree_sum(rep.degrees, rep.degree_terms);
    rep.error += kRoundoffFloor * (1.0 + std::abs(rep.value));
    return rep;
}

}  // namespace

cplx signed_degree_sum(const std::vector<int>& degrees,
                       const std::vector<cplx>& terms) {
    if (degrees.size() != terms.size()) {
        throw std::invalid_argument("degree labels and terms differ in length");
    }
    cplx total = 0.0;
    for (size_t i = 0; i < terms.size(); ++i) {
        total += (degrees[i] % 2 == 0 ? 1.0 : -1.0) * terms[i];
    }
    return total;
}

LefschetzReport lefschetz_heat(const Geometry& geom, const Vec& angles,
                               double t, HeatEngine engine,
                               const HeatOptions& opts) {
    if (!(t > 0.0)) throw std::invalid_argument("heat trace needs t > 0");
    check_group_element(geom, angles);
    Scenario s = geom.scenario();
    LefschetzReport rep;
    rep.scenario = s;
    rep.method = engine == HeatEngine::Spectral ? "heat-spectral" : "heat-parametrix";
    rep.angles = angles;
    for (int j = 0; j <= geom.dim(); ++j) {
        rep.degrees.push_back(j);
        if (engine == HeatEngine::Parametrix && symbol_available(s, j)) {
            int levels = opts.parametrix_levels < 0 ? default_trace_levels(s)
                                                    : opts.parametrix_levels;
            TraceResult r = equivariant_trace_parametrix(s, j, angles, t, levels);
            rep.degree_terms.push_back(r.value);
            rep.error += r.error_estimate;
            if (!r.converged) {
                rep.notes.push_back("degree " + std::to_string(j) +
                                    " trace flagged: " + r.flag);
            }
            continue;
        }
        if (engine == HeatEngine::Parametrix) {
            rep.notes.push_back("degree " + std::to_string(j) +
                                " has no chart symbol; eigenvalue sum substituted");
        }
        HeatSum h = heat_character_sum(s, j, angles, t, opts.spectral_cutoff);
        rep.degree_terms.push_back(h.value);
        rep.error += h.tail_bound;
    }
    rep.value = signed_degree_sum(rep.degrees, rep.degree_terms);
    rep.error += kRoundoffFloor * (1.0 + std::abs(rep.value));
    return rep;
}

LefschetzReport atiyah_bott(const Geometry& geom, const Vec& angles) {
    check_group_element(geom, angles);
    FixedSet fs = fixed_set(geom, angles);
    if (fs.degenerate) {
        throw std::invalid_argument(
            "fixed-point sum rejected: this element fixes " + fs.fixed_set_name +
            ", so no fixed point is isolated and transversal");
    }
    LefschetzReport rep;
    rep.scenario = geom.scenario();
    rep.method = "fixed-point";
    rep.angles = angles;
    for (int j = 0; j <= geom.dim(); ++j) {
        rep.degrees.push_back(j);
        rep.degree_terms.push_back(fixed_degree_term(geom, j, angles, fs));
    }
    if (fs.points.empty()) {
        rep.notes.push_back("no fixed points; every degree contributes an empty sum");
    }
    rep.value = signed_degree_sum(rep.degrees, rep.degree_terms);
    rep.error = kRoundoffFloor * (1.0 + std::abs(rep.value));
    return rep;
}

LefschetzReport equivariant_lefschetz(const Geometry& geom,
                                      const std::vector<int>& rho,
                                      AverageRoute route,
                                      const AverageOptions& opts) {
    check_character(geom, rho);
    int nodes = opts.nodes_per_angle > 0
                    ? opts.nodes_per_angle
                    : (route == AverageRoute::HeatSpectral ? 32 : 16);
    if (route == AverageRoute::HeatSpectral && !(opts.t > 0.0)) {
        throw std::invalid_argument("heat trace needs t > 0");
    }
    Scenario s = geom.scenario();
    LefschetzReport rep;
    rep.scenario = s;
    rep.rho = rho;
    double err = 0.0;
    long degenerate_hits = 0;
    for (int j = 0; j <= geom.dim(); ++j) {
        rep.degrees.push_back(j);
        cplx avg = 0.0;
        switch (route) {
            case AverageRoute::Cohomology:
                rep.method = "cohomology";
                avg = geom.group_average(
                    [&](const Vec& g) { return cplx(harmonic_character(s, j, g), 0.0); },
                    rho, nodes);
                break;
            case AverageRoute::HeatSpectral: {
                rep.method = "heat-spectral";
                avg = geom.group_average(
                    [&](const Vec& g) {
                        return heat_character_sum(s, j, g, opts.t).value;
                    },
                    rho, nodes);
                // The certified tail bound is built from eigenspace
                // dimensions, so one evaluation covers every node.
                err += heat_character_sum(s, j, Vec(geom.group_dim(), 0.0), opts.t)
                           .tail_bound;
                break;
            }
            case AverageRoute::FixedPoint:
                rep.method = "fixed-point";
                avg = geom.group_average(
                    [&](const Vec& g) {
                        FixedSet fs = fixed_set(geom, g);
                        if (fs.degenerate) {
                            ++degenerate_hits;
                            return cplx(harmonic_character(s, j, g), 0.0);
                        }
                        return fixed_degree_term(geom, j, g, fs);
                    },
                    rho, nodes);
                break;
        }
        rep.degree_terms.push_back(avg);
    }
    if (degenerate_hits > 0) {
        rep.notes.push_back(std::to_string(degenerate_hits) +
                            " degenerate nodes took the cohomology value");
    }
    rep.value = signed_degree_sum(rep.degrees, rep.degree_terms);
    rep.error = err + kRoundoffFloor * (1.0 + std::abs(rep.value));
    return rep;
}

LefschetzReport heat_constant_term(const Geometry& geom,
                                   const std::vector<int>& rho,
                                   ConstantTermMode mode,
                                   const ConstantTermOptions& opts) {
    check_character(geom, rho);
    if (mode == ConstantTermMode::Exact) {
        return exact_constant_term(geom, rho, opts);
    }
    return extraction_constant_term(geom, rho, opts);
}

}  // namespace leflab
