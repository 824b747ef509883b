#ifndef LEFLAB_OSCILLATORY_HPP
#define LEFLAB_OSCILLATORY_HPP

// Stationary-phase layer for the group-action phase (gx - x).xi: exact phase
// derivatives, parametrized critical manifolds with their transversal Hessian
// data, the regular-part coefficient L0 extracted through a collar limit, and
// direct quadrature of the oscillatory integrals with expansion-order fits.

#include <functional>
#include <string>
#include <vector>

#include "leflab/common.hpp"
#include "leflab/geometry.hpp"

namespace leflab {

// A point of chart x cotangent fiber x group, the domain of the phase.
struct PhasePoint {
    int chart = 0;
    Vec x;
    Vec xi;
    Vec angles;
};

struct PhaseGradient {
    double value = 0.0;
    Vec dx;
    Vec dxi;
    Vec dangles;
};

double phase_value(Scenario s, const PhasePoint& p);

// Exact first derivatives: dxi is the displacement (gx - x) in chart
// coordinates (periodic representative on flat charts), dx = (dg^T - 1) xi,
// and dangles pairs xi with the generator fields at gx.
PhaseGradient phase_eval_grad(Scenario s, const PhasePoint& p);

// Full second derivative in the (x, xi, angles) ordering; square of side
// 2 dim + group_dim.
MatD phase_hessian(Scenario s, const PhasePoint& p);

// One parametrized piece of the regular critical set.  The embedding sends a
// parameter box into (chart, x, xi, angles); density is the surface measure
// of the embedding in chart-Euclidean coordinates, and the normal frame is
// orthonormal, spanning the transversal directions (one vector per unit of
// codimension).  Quadrature panels split at the listed interior breakpoints.
struct CriticalChart {
    int chart = 0;
    int dim = 0;
    Vec lo;
    Vec hi;
    std::vector<bool> periodic;
    std::vector<Vec> panel_breaks;
    int collar_axis = -1;  // axis whose lower endpoint meets the singular stratum
    std::function<PhasePoint(const Vec&)> embed;
    std::function<double(const Vec&)> density;
    std::function<std::vector<Vec>(const Vec&)> normal_frame;
    std::function<double(const Vec&)> singular_distance;  // +inf for free actions
};

struct CriticalSet {
    std::vector<CriticalChart> charts;
    int dim = 0;
    int codim = 0;                 // twice the principal orbit dimension
    std::string singular_stratum;  // empty when the action is free
};

// Closed-form parametrizations of the regular critical set.  The charts
// jointly cover it; amplitudes carry the partition weights whenever two
// charts overlap, so summing per-chart integrals never double counts.
CriticalSet critical_chart(Scenario s);

struct HessianReport {
    PhasePoint point;
    MatD transversal;  // in the chart's normal frame
    double abs_det = 0.0;
    int signature = 0;
};

// Second derivatives restricted to the normal frame at embed(params).
// Rejects parameters whose singular distance is at or below the margin.
HessianReport transversal_hessian(Scenario s, const CriticalChart& chart,
                                  const Vec& params, double margin = 1e-3);

// Amplitude over the phase domain.  eval is authoritative; when both
// gauss_base and gauss_decay are set they declare the separable form
//   a(x, xi, g) = gauss_base(x, g) * exp(-gauss_decay(x, g) |xi|^2)
// (xi ignored by both callbacks), which lets the integral driver replace the
// xi axes by exact Gaussian-Fourier moments.
struct Amplitude {
    std::function<double(const PhasePoint&)> eval;
    std::function<double(const PhasePoint&)> gauss_base;
    std::function<double(const PhasePoint&)> gauss_decay;

    bool separable() const {
        return static_cast<bool>(gauss_base) && static_cast<bool>(gauss_decay);
    }
};

struct CollarOptions {
    double eps = 0.1;        // widest collar radius around the singular stratum
    int levels = 4;          // successive halvings feeding the extrapolation tableau
    int nodes = 20;          // Gauss-Legendre nodes per panel and axis
    int periodic_nodes = 32; // trapezoid nodes per periodic axis
};

struct CollarResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
    std::string flag;
};

// L0: the integral over the regular critical set of
//   amplitude / sqrt |det transversal Hessian|
// against the induced density, summed over the parametrization charts.  Near
// a singular stratum the collar [eps, ...] is excised and the limit taken by
// Richardson extrapolation in eps; failure to contract is flagged.  Throws if
// any visited node has nonzero transversal signature, which would invalidate
// the phase-factor-free normalization used throughout.
CollarResult leading_coefficient(Scenario s, const Amplitude& a,
                                 const CollarOptions& opts = {});

struct OscOptions {
    double xi_radius = 4.5;        // direct-path truncation per cotangent axis
    double x_radius = 2.5;         // Sphere2 radial extent of the position grid
    int x_nodes = 8;               // per-axis position nodes (angular on Sphere2)
    int radial_nodes = 18;         // Sphere2 radial Gauss-Legendre nodes per panel
    double angle_resolution = 9.0; // group nodes per axis ~ resolution * extent / mu
    int xi_margin_nodes = 26;      // direct-path nodes beyond the resolution need
    double budget = 4.0e8;         // cap on direct-path amplitude evaluations
    bool force_direct = false;     // ignore a declared separable profile
    double rtol = 1e-6;
    double atol = 1e-14;
};

struct OscResult {
    cplx value{};
    double error = 0.0;
    long long evaluations = 0;
    bool converged = true;
    std::string flag;
};

// I(mu): sum over charts of the integral of exp(i Phi / mu) * amplitude
// against chart-Lebesgue position measure, Lebesgue cotangent measure, and
// the flat Haar measure on the group.  Group axes get node counts growing
// like 1/mu; cotangent axes get counts tied to the local frequency, either
// directly or through the exact moment route for separable amplitudes.  The
// node budget caps the direct path; hitting it is flagged, with the error
// estimate still attached.
OscResult oscillatory_integral(Scenario s, const Amplitude& a, double mu,
                               const OscOptions& opts = {});

struct ExpansionFit {
    Vec mus;
    std::vector<cplx> values;
    Vec errors;
    double fitted_exponent = 0.0;     // slope of log |I| against log mu
    double fitted_coefficient = 0.0;  // extrapolated I(mu) / (2 pi mu)^kappa
    double l0 = 0.0;
    double l0_error = 0.0;
    Vec remainders;                   // |I(mu) - (2 pi mu)^kappa L0|
    double remainder_exponent = 0.0;  // with the log allowance divided out
    int log_power = 0;                // isotropy chain length minus one
    bool converged = true;
    std::string flag;
};

// Evaluates I over the mu grid (at least three points), extrapolates the
// normalized values to mu = 0, and fits the remainder order against the
// leading term (2 pi mu)^kappa L0 with the scenario's log-power allowance.
ExpansionFit expansion_fit(Scenario s, const Amplitude& a, const Vec& mus,
                           const OscOptions& osc = {},
                           const CollarOptions& collar = {});

}  // namespace leflab

#endif
