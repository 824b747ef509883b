#include "leflab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace leflab {

namespace {

// Legendre P_n and derivative via the three-term recurrence.
void legendre_eval(int n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    if (n == 0) { p = p0; dp = 0.0; return; }
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
}

Rule1D build_gauss_legendre(int n) {
    Rule1D r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        // Tricomi initial guess, then Newton.
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double p, dp;
        for (int it = 0; it < 100; ++it) {
            legendre_eval(n, x, p, dp);
            double dx = -p / dp;
            x += dx;
            if (std::abs(dx) < 1e-15) break;
        }
        legendre_eval(n, x, p, dp);
        r.x[n - 1 - i] = x;
        r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

// Orthonormal Hermite functions psi_k(x) = h_k(x) e^{-x^2/2} satisfy
//   psi_{k+1} = (x psi_k - sqrt(k/2) psi_{k-1}) / sqrt((k+1)/2)
// and stay O(1), so the recurrence is stable for large n.
void hermite_eval(int n, double x, double& psi, double& dpsi) {
    double pm = 0.0;
    double pc = std::pow(pi, -0.25) * std::exp(-0.5 * x * x);
    for (int k = 0; k < n; ++k) {
        double pn = (x * pc - std::sqrt(0.5 * k) * pm) / std::sqrt(0.5 * (k + 1));
        pm = pc;
        pc = pn;
    }
    psi = pc;
    dpsi = -x * pc + std::sqrt(2.0 * n) * pm;
}

Rule1D build_gauss_hermite(int n) {
    // Nodes from the symmetric Jacobi matrix (diagonal 0, off-diagonal
    // sqrt(k/2)), each polished by one Newton step on psi_n.  Weights are
    // Christoffel sums over the psi basis, already O(1) at the outer nodes.
    MatD J(n, n);
    for (int k = 1; k < n; ++k) {
        J(k - 1, k) = J(k, k - 1) = std::sqrt(0.5 * k);
    }
    Vec nodes = symmetric_eigenvalues(J);
    Rule1D r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = nodes[i];
        double psi, dpsi;
        for (int it = 0; it < 4; ++it) {
            hermite_eval(n, x, psi, dpsi);
            double dx = -psi / dpsi;
            x += dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double s = 0.0;
        double qm = 0.0;
        double qc = std::pow(pi, -0.25) * std::exp(-0.5 * x * x);
        s += qc * qc;
        for (int k = 0; k + 1 < n; ++k) {
            double qn = (x * qc - std::sqrt(0.5 * k) * qm) / std::sqrt(0.5 * (k + 1));
            qm = qc;
            qc = qn;
            s += qc * qc;
        }
        r.x[i] = x;
        // Classical Christoffel number: 1 / sum_k h_k(x_i)^2 with h_k
        // orthonormal against e^{-x^2} dx; equals e^{-x^2} / sum_k psi_k^2.
        r.w[i] = std::exp(-x * x) / s;
    }
    return r;
}

std::map<std::pair<RuleKind, int>, Rule1D>& rule_cache() {
    static std::map<std::pair<RuleKind, int>, Rule1D> cache;
    return cache;
}
std::mutex cache_mutex;

}  // namespace

const Rule1D& gauss_legendre_rule(int n) {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto key = std::make_pair(RuleKind::GaussLegendre, n);
    auto it = rule_cache().find(key);
    if (it == rule_cache().end()) {
        it = rule_cache().emplace(key, build_gauss_legendre(n)).first;
    }
    return it->second;
}

const Rule1D& gauss_hermite_rule(int n) {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto key = std::make_pair(RuleKind::GaussianFullLine, n);
    auto it = rule_cache().find(key);
    if (it == rule_cache().end()) {
        it = rule_cache().emplace(key, build_gauss_hermite(n)).first;
    }
    return it->second;
}

Rule1D materialize_axis(const QuadratureSpec& spec, int nodes) {
    Rule1D out;
    switch (spec.kind) {
        case RuleKind::PeriodicTrapezoid: {
            double len = spec.b - spec.a;
            out.x.resize(nodes);
            out.w.assign(nodes, len / nodes);
            for (int i = 0; i < nodes; ++i) {
                out.x[i] = spec.a + (i + 0.5) * len / nodes;
            }
            break;
        }
        case RuleKind::GaussLegendre: {
            const Rule1D& base = gauss_legendre_rule(nodes);
            double mid = 0.5 * (spec.a + spec.b);
            double rad = 0.5 * (spec.b - spec.a);
            out.x.resize(nodes);
            out.w.resize(nodes);
            for (int i = 0; i < nodes; ++i) {
                out.x[i] = mid + rad * base.x[i];
                out.w[i] = rad * base.w[i];
            }
            break;
        }
        case RuleKind::GaussianFullLine: {
            if (spec.truncation_radius <= 0.0) {
                throw std::invalid_argument("GaussianFullLine axis needs truncation_radius > 0");
            }
            // Plain Gauss-Legendre on [-R, R]; the integrand carries its own
            // Gaussian.  This beats Gauss-Hermite once phases oscillate.
            QuadratureSpec inner = spec;
            inner.kind = RuleKind::GaussLegendre;
            inner.a = -spec.truncation_radius;
            inner.b = spec.truncation_radius;
            out = materialize_axis(inner, nodes);
            break;
        }
        case RuleKind::GaussianHalfLine: {
            if (spec.truncation_radius <= 0.0) {
                throw std::invalid_argument("GaussianHalfLine axis needs truncation_radius > 0");
            }
            QuadratureSpec inner = spec;
            inner.kind = RuleKind::GaussLegendre;
            inner.a = 0.0;
            inner.b = spec.truncation_radius;
            out = materialize_axis(inner, nodes);
            break;
        }
    }
    return out;
}

namespace {

cplx evaluate_product(const std::function<cplx(const Vec&)>& f,
                      const std::vector<Rule1D>& axes) {
    size_t dim = axes.size();
    std::vector<size_t> idx(dim, 0);
    Vec x(dim);
    cplx total = 0.0;
    while (true) {
        double w = 1.0;
        for (size_t d = 0; d < dim; ++d) {
            x[d] = axes[d].x[idx[d]];
            w *= axes[d].w[idx[d]];
        }
        cplx fx = f(x);
        if (!std::isfinite(fx.real()) || !std::isfinite(fx.imag())) {
            std::ostringstream oss;
            oss << "non-finite integrand at node (";
            for (size_t d = 0; d < dim; ++d) {
                oss << (d ? ", " : "") << x[d];
            }
            oss << ")";
            throw std::runtime_error(oss.str());
        }
        total += w * fx;
        size_t d = 0;
        for (; d < dim; ++d) {
            if (++idx[d] < axes[d].x.size()) break;
            idx[d] = 0;
        }
        if (d == dim) break;
    }
    return total;
}

}  // namespace

IntegrationResult integrate(const std::function<cplx(const Vec&)>& f,
                            const std::vector<QuadratureSpec>& axes) {
    if (axes.empty()) {
        throw std::invalid_argument("integrate needs at least one axis");
    }
    std::vector<Rule1D> coarse, fine;
    coarse.reserve(axes.size());
    fine.reserve(axes.size());
    for (const auto& spec : axes) {
        coarse.push_back(materialize_axis(spec, spec.nodes));
        fine.push_back(materialize_axis(spec, 2 * spec.nodes));
    }
    cplx vc = evaluate_product(f, coarse);
    cplx vf = evaluate_product(f, fine);
    IntegrationResult res;
    res.value = vf;
    res.error_estimate = std::abs(vf - vc);
    double tol = 0.0;
    for (const auto& spec : axes) tol = std::max(tol, spec.abs_tol);
    res.converged = res.error_estimate <= tol;
    if (!res.converged) {
        std::ostringstream oss;
        oss << "doubling estimate " << res.error_estimate << " above tol " << tol;
        res.flag = oss.str();
    }
    return res;
}

int quadrature_ladder(int n) {
    int k = 8;
    while (k < n) k += k / 2;  // 8, 12, 18, 27, 40, 60, 90, 135, ...
    return k;
}

MomentSet gaussian_fourier_moments(double b, double c, int pmax) {
    if (c <= 0.0) {
        throw std::invalid_argument("gaussian_fourier_moments needs c > 0");
    }
    // e^{-c R^2} <= 1e-20 of the peak keeps truncation far below quadrature
    // error for every tolerance used here.
    double R = std::sqrt(45.0 / c);
    // Resolve the fastest oscillation: |b| R / pi half-periods over [-R, R],
    // a handful of nodes per half-period, floor for the Gaussian itself.
    int n = quadrature_ladder(int(1.4 * std::abs(b) * R / pi) + 32);
    const Rule1D& base = gauss_legendre_rule(n);
    const Rule1D& fine = gauss_legendre_rule(quadrature_ladder(n + 1));
    MomentSet out;
    out.m.assign(pmax + 1, cplx(0.0));
    std::vector<cplx> coarse(pmax + 1, cplx(0.0));
    for (int pass = 0; pass < 2; ++pass) {
        const Rule1D& rule = pass ? fine : base;
        std::vector<cplx>& acc = pass ? out.m : coarse;
        for (size_t i = 0; i < rule.x.size(); ++i) {
            double s = R * rule.x[i];
            double w = R * rule.w[i];
            cplx ph = std::exp(cplx(-c * s * s, b * s));
            double sp = 1.0;
            for (int p = 0; p <= pmax; ++p) {
                acc[p] += w * sp * ph;
                sp *= s;
            }
        }
    }
    for (int p = 0; p <= pmax; ++p) {
        out.error_estimate = std::max(out.error_estimate, std::abs(out.m[p] - coarse[p]));
    }
    return out;
}

}  // namespace leflab
