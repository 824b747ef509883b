#ifndef LEFLAB_GEOMETRY_HPP
#define LEFLAB_GEOMETRY_HPP

// Model geometries: a flat circle, a flat 2-torus, and the round 2-sphere in
// stereographic charts, each with its isometric torus action, metric jets,
// partition of unity, momentum map, and orbit bookkeeping.

#include <functional>
#include <string>

#include "leflab/common.hpp"
#include "leflab/jet.hpp"

namespace leflab {

enum class Scenario { Circle, Torus2, Sphere2 };

Scenario scenario_from_name(const std::string& name);  // throws on unknown name
std::string scenario_name(Scenario s);
std::vector<Scenario> all_scenarios();

// Orbit-type summary of the action on the cotangent bundle.
struct OrbitData {
    int principal_orbit_dim = 0;       // kappa
    int isotropy_chain_length = 1;     // Lambda
    int principal_isotropy_order = 1;  // |H|; 1 for every scenario here
    // Multiplicity of the trivial character in rho restricted to H.
    double trivial_multiplicity(const std::vector<int>& rho) const;
};

struct ChartPoint {
    int chart = 0;
    Vec x;
};

struct ActionResult {
    ChartPoint point;
    MatD differential;  // chart matrix of the tangent map at the source point
};

class Geometry {
public:
    explicit Geometry(Scenario s);

    Scenario scenario() const { return scenario_; }
    int dim() const { return dim_; }
    int group_dim() const { return group_dim_; }
    double group_volume() const;  // (2 pi)^group_dim
    int chart_count() const { return charts_; }
    OrbitData orbit_info() const;

    // Group action in chart coordinates.  Flat scenarios translate angles;
    // Sphere2 rotates both stereographic charts by the same plane rotation,
    // so the image never leaves the source chart.
    ActionResult act(const Vec& angles, const ChartPoint& p) const;

    // Re-expresses a Sphere2 point in the other chart; identity elsewhere.
    // Rejects the chart origin (the antipodal point has no coordinates there).
    ChartPoint transit(const ChartPoint& p, int target_chart) const;
    MatD transit_jacobian(const ChartPoint& p, int target_chart) const;

    MatD metric(const ChartPoint& p) const;
    MatD inverse_metric(const ChartPoint& p) const;
    double density(const ChartPoint& p) const;  // sqrt det g in the chart
    // Scalar conformal factor of the inverse metric: g^{ij} = c(x) delta_ij.
    double conformal_factor(const ChartPoint& p) const;
    JetD conformal_factor_jet(const ChartPoint& p, int order) const;
    JetD density_jet(const ChartPoint& p, int order) const;

    // Partition of unity subordinate to the charts and the wider cutoffs
    // (cutoff == 1 on the closed support of the partition function).
    double partition(const ChartPoint& p) const;
    double cutoff(const ChartPoint& p) const;
    JetD partition_jet(const ChartPoint& p, int order) const;
    JetD cutoff_jet(const ChartPoint& p, int order) const;
    // Radii bounding supp f and supp fbar in each Sphere2 chart.
    static constexpr double partition_outer_radius = 2.0;
    static constexpr double cutoff_outer_radius = 8.0;

    // Fundamental vector fields of the action and the momentum pairing.
    Vec killing_field(int a, const ChartPoint& p) const;
    MatD killing_derivative(int a, const ChartPoint& p) const;
    Vec momentum(const ChartPoint& p, const Vec& xi) const;  // J_a = xi . field_a
    // Volume of the orbit through (x, xi) in chart-Euclidean phase space.
    double orbit_volume(const ChartPoint& p, const Vec& xi) const;

    // Componentwise representative of a - b in (-pi, pi]^n (flat charts).
    Vec periodic_difference(const Vec& a, const Vec& b) const;

    // (1/vol G) int_G f(g) conj(e^{i rho.theta}) dg on an N^d trapezoid grid
    // shifted by half a spacing (spectrally exact; never samples g = e).
    cplx group_average(const std::function<cplx(const Vec&)>& f,
                       const std::vector<int>& rho, int nodes_per_angle) const;

private:
    void require_in_domain(const ChartPoint& p) const;

    Scenario scenario_;
    int dim_;
    int group_dim_;
    int charts_;
};

// Smooth-step building blocks, exposed for direct testing.
double smooth_exp_profile(double s);               // e^{-1/s} for s > 0, else 0
double smooth_step(double s);                      // 0 below 0, 1 above 1, C-infinity
double bump_transition(double u);                  // smooth_step((u + a)/(2a)), a = log 2
JetD bump_transition_jet(const JetD& u);           // same, on a log-radius jet

}  // namespace leflab

#endif
