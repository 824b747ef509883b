#ifndef LEFLAB_QUADRATURE_HPP
#define LEFLAB_QUADRATURE_HPP

// Deterministic product quadrature over low-dimensional boxes with three
// families of 1-D rules, plus the oscillatory Gaussian moment helper used by
// the symbol trace integrals.  Error estimates come from node doubling.

#include <functional>

#include "leflab/common.hpp"

namespace leflab {

enum class RuleKind {
    PeriodicTrapezoid,  // exact for trig polynomials of degree < node count
    GaussLegendre,      // finite interval [a, b]
    GaussianFullLine,   // weight e^{-x^2} built in, nodes on all of R
    GaussianHalfLine,   // folded full-line rule on [0, inf); even integrands
};

struct QuadratureSpec {
    RuleKind kind = RuleKind::GaussLegendre;
    int nodes = 32;
    double a = 0.0;                  // interval for trapezoid / Gauss-Legendre
    double b = 1.0;
    double truncation_radius = 0.0;  // required > 0 for the line rules
    double abs_tol = 1e-10;
};

struct Rule1D {
    std::vector<double> x;
    std::vector<double> w;
};

const Rule1D& gauss_legendre_rule(int n);   // on [-1, 1], cached
const Rule1D& gauss_hermite_rule(int n);    // sum w_i f(x_i) ~ int f e^{-x^2} dx, cached

// Concrete nodes on the axis described by spec (with `nodes` overridable).
Rule1D materialize_axis(const QuadratureSpec& spec, int nodes);

struct IntegrationResult {
    cplx value{};
    double error_estimate = 0.0;
    bool converged = true;
    std::string flag;
};

// Product quadrature of f over the axes.  Evaluates at the requested node
// counts and once more with all counts doubled; the doubled value is
// returned and the difference drives the error estimate.  Throws on
// non-finite integrand values, naming the node.
IntegrationResult integrate(const std::function<cplx(const Vec&)>& f,
                            const std::vector<QuadratureSpec>& axes);

// Moments  M_p(b, c) = int s^p e^{i b s} e^{-c s^2} ds  for p = 0..pmax,
// by Gauss-Legendre on [-R, R] with R chosen so the discarded Gaussian mass
// is below 1e-12 of the total, and the node count scaled with |b| R.  The
// engine's xi-axes all reduce to these.
struct MomentSet {
    std::vector<cplx> m;
    double error_estimate = 0.0;
};
MomentSet gaussian_fourier_moments(double b, double c, int pmax);

// Snaps n upward to the cached rule ladder (keeps rule reuse tight).
int quadrature_ladder(int n);

}  // namespace leflab

#endif
