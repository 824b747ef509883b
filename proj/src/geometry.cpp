#include "leflab/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace leflab {

namespace {

// Half-width of the transition zone on the log-radius axis.  The partition
// profile falls from 1 to 0 as the radius runs from 1/2 to 2; the cutoff is
// the same profile pushed out by 2a, identically 1 up to radius 2 and
// supported in radius <= 8.
const double kLogHalfWidth = std::log(2.0);

// Any chart coordinate this far out is outside every domain of interest;
// integrands vanish beyond the cutoff radius 8 with margin to spare.
const double kChartDomainRadius = 64.0;

MatD rotation2(double phi) {
    MatD r(2, 2);
    r(0, 0) = std::cos(phi);
    r(0, 1) = -std::sin(phi);
    r(1, 0) = std::sin(phi);
    r(1, 1) = std::cos(phi);
    return r;
}

double reduce_angle_0_2pi(double a) {
    double r = std::fmod(a, two_pi);
    if (r < 0) r += two_pi;
    return r;
}

}  // namespace

double smooth_exp_profile(double s) {
    return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
}

double smooth_step(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    double a = smooth_exp_profile(s);
    return a / (a + smooth_exp_profile(1.0 - s));
}

double bump_transition(double u) {
    return smooth_step((u + kLogHalfWidth) / (2.0 * kLogHalfWidth));
}

JetD bump_transition_jet(const JetD& u) {
    double s0 = (u.value() + kLogHalfWidth) / (2.0 * kLogHalfWidth);
    if (s0 <= 0.0) return JetD::constant(u.nvars(), u.order(), 0.0);
    if (s0 >= 1.0) return JetD::constant(u.nvars(), u.order(), 1.0);
    JetD s = (u + JetD::constant(u.nvars(), u.order(), kLogHalfWidth)) *
             (1.0 / (2.0 * kLogHalfWidth));
    JetD one = JetD::constant(u.nvars(), u.order(), 1.0);
    // e^{-1/s} and e^{-1/(1-s)} are both interior here, so jets are regular.
    JetD a = jet_exp(-jet_reciprocal(s));
    JetD b = jet_exp(-jet_reciprocal(one - s));
    return a / (a + b);
}

Scenario scenario_from_name(const std::string& name) {
    if (name == "circle") return Scenario::Circle;
    if (name == "torus2") return Scenario::Torus2;
    if (name == "sphere2") return Scenario::Sphere2;
    throw std::invalid_argument("unknown scenario: " + name);
}

std::string scenario_name(Scenario s) {
    switch (s) {
        case Scenario::Circle: return "circle";
        case Scenario::Torus2: return "torus2";
        case Scenario::Sphere2: return "sphere2";
    }
    throw std::logic_error("unreachable scenario tag");
}

std::vector<Scenario> all_scenarios() {
    return {Scenario::Circle, Scenario::Torus2, Scenario::Sphere2};
}

double OrbitData::trivial_multiplicity(const std::vector<int>&) const {
    // The principal isotropy group is trivial in every scenario, so each
    // character restricts to the trivial one exactly once.
    return 1.0;
}

Geometry::Geometry(Scenario s) : scenario_(s) {
    switch (s) {
        case Scenario::Circle:
            dim_ = 1;
            group_dim_ = 1;
            charts_ = 1;
            break;
        case Scenario::Torus2:
            dim_ = 2;
            group_dim_ = 2;
            charts_ = 1;
            break;
        case Scenario::Sphere2:
            dim_ = 2;
            group_dim_ = 1;
            charts_ = 2;
            break;
    }
}

double Geometry::group_volume() const {
    return std::pow(two_pi, group_dim_);
}

OrbitData Geometry::orbit_info() const {
    OrbitData d;
    switch (scenario_) {
        case Scenario::Circle:
            d.principal_orbit_dim = 1;
            d.isotropy_chain_length = 1;
            break;
        case Scenario::Torus2:
            d.principal_orbit_dim = 2;
            d.isotropy_chain_length = 1;
            break;
        case Scenario::Sphere2:
            // Principal circle orbits plus two isolated fixed poles.
            d.principal_orbit_dim = 1;
            d.isotropy_chain_length = 2;
            break;
    }
    d.principal_isotropy_order = 1;
    return d;
}

void Geometry::require_in_domain(const ChartPoint& p) const {
    if (p.chart < 0 || p.chart >= charts_) {
        throw std::invalid_argument("chart index out of range");
    }
    if (static_cast<int>(p.x.size()) != dim_) {
        throw std::invalid_argument("chart point dimension mismatch");
    }
    if (scenario_ == Scenario::Sphere2) {
        double r2 = sqr(p.x[0]) + sqr(p.x[1]);
        if (r2 > sqr(kChartDomainRadius)) {
            throw std::invalid_argument(
                "point outside the stereographic chart domain; transit first");
        }
    }
}

ActionResult Geometry::act(const Vec& angles, const ChartPoint& p) const {
    require_in_domain(p);
    if (static_cast<int>(angles.size()) != group_dim_) {
        throw std::invalid_argument("group element dimension mismatch");
    }
    ActionResult out;
    out.point.chart = p.chart;
    if (scenario_ == Scenario::Sphere2) {
        MatD rot = rotation2(angles[0]);
        out.point.x = {rot(0, 0) * p.x[0] + rot(0, 1) * p.x[1],
                       rot(1, 0) * p.x[0] + rot(1, 1) * p.x[1]};
        out.differential = rot;
    } else {
        out.point.x = p.x;
        for (int i = 0; i < dim_; ++i) {
            out.point.x[i] = reduce_angle_0_2pi(p.x[i] + angles[i]);
        }
        out.differential = MatD::identity(dim_);
    }
    return out;
}

ChartPoint Geometry::transit(const ChartPoint& p, int target_chart) const {
    require_in_domain(p);
    if (target_chart == p.chart) return p;
    if (scenario_ != Scenario::Sphere2) {
        throw std::invalid_argument("single-chart scenario has no transition");
    }
    double r2 = sqr(p.x[0]) + sqr(p.x[1]);
    if (r2 == 0.0) {
        throw std::invalid_argument(
            "chart origin is the antipode of the target chart's domain");
    }
    return ChartPoint{target_chart, {p.x[0] / r2, p.x[1] / r2}};
}

MatD Geometry::transit_jacobian(const ChartPoint& p, int target_chart) const {
    require_in_domain(p);
    if (target_chart == p.chart) return MatD::identity(dim_);
    if (scenario_ != Scenario::Sphere2) {
        throw std::invalid_argument("single-chart scenario has no transition");
    }
    double r2 = sqr(p.x[0]) + sqr(p.x[1]);
    if (r2 == 0.0) {
        throw std::invalid_argument("transition jacobian undefined at the origin");
    }
    // d(x/r^2) = (r^2 I - 2 x x^T)/r^4; determinant -1/r^4.
    MatD j(2, 2);
    j(0, 0) = (r2 - 2 * p.x[0] * p.x[0]) / (r2 * r2);
    j(0, 1) = (-2 * p.x[0] * p.x[1]) / (r2 * r2);
    j(1, 0) = j(0, 1);
    j(1, 1) = (r2 - 2 * p.x[1] * p.x[1]) / (r2 * r2);
    return j;
}

MatD Geometry::metric(const ChartPoint& p) const {
    require_in_domain(p);
    MatD g = MatD::identity(dim_);
    if (scenario_ == Scenario::Sphere2) {
        double r2 = sqr(p.x[0]) + sqr(p.x[1]);
        double s = 4.0 / sqr(1.0 + r2);
        g(0, 0) = s;
        g(1, 1) = s;
    }
    return g;
}

MatD Geometry::inverse_metric(const ChartPoint& p) const {
    MatD g = MatD::identity(dim_);
    double c = conformal_factor(p);
    for (int i = 0; i < dim_; ++i) g(i, i) = c;
    return g;
}

double Geometry::conformal_factor(const ChartPoint& p) const {
    require_in_domain(p);
    if (scenario_ != Scenario::Sphere2) return 1.0;
    double r2 = sqr(p.x[0]) + sqr(p.x[1]);
    return sqr(1.0 + r2) / 4.0;
}

double Geometry::density(const ChartPoint& p) const {
    require_in_domain(p);
    if (scenario_ != Scenario::Sphere2) return 1.0;
    double r2 = sqr(p.x[0]) + sqr(p.x[1]);
    return 4.0 / sqr(1.0 + r2);
}

JetD Geometry::conformal_factor_jet(const ChartPoint& p, int order) const {
    require_in_domain(p);
    if (scenario_ != Scenario::Sphere2) {
        return JetD::constant(dim_, order, 1.0);
    }
    JetD x = JetD::variable(2, order, 0, p.x[0]);
    JetD y = JetD::variable(2, order, 1, p.x[1]);
    JetD one = JetD::constant(2, order, 1.0);
    JetD opr2 = one + x * x + y * y;
    return opr2 * opr2 * 0.25;
}

JetD Geometry::density_jet(const ChartPoint& p, int order) const {
    require_in_domain(p);
    if (scenario_ != Scenario::Sphere2) {
        return JetD::constant(dim_, order, 1.0);
    }
    return jet_reciprocal(conformal_factor_jet(p, order));
}

namespace {

// Log-radius jet at x != 0; the bump profiles are functions of log |x|.
JetD log_radius_jet(const Vec& x0, int order) {
    JetD x = JetD::variable(2, order, 0, x0[0]);
    JetD y = JetD::variable(2, order, 1, x0[1]);
    return jet_log(x * x + y * y) * 0.5;
}

}  // namespace

double Geometry::partition(const ChartPoint& p) const {
    require_in_domain(p);
    if (scenario_ != Scenario::Sphere2) return 1.0;
    double r = std::sqrt(sqr(p.x[0]) + sqr(p.x[1]));
    if (r == 0.0) return 1.0;
    return 1.0 - bump_transition(std::log(r));
}

double Geometry::cutoff(const ChartPoint& p) const {
    require_in_domain(p);
    if (scenario_ != Scenario::Sphere2) return 1.0;
    double r = std::sqrt(sqr(p.x[0]) + sqr(p.x[1]));
    if (r == 0.0) return 1.0;
    return 1.0 - bump_transition(std::log(r) - 2.0 * kLogHalfWidth);
}

JetD Geometry::partition_jet(const ChartPoint& p, int order) const {
    require_in_domain(p);
    if (scenario_ != Scenario::Sphere2) {
        return JetD::constant(dim_, order, 1.0);
    }
    double r = std::sqrt(sqr(p.x[0]) + sqr(p.x[1]));
    // Outside the transition annulus the profile is locally constant.
    if (r <= 0.5) return JetD::constant(2, order, 1.0);
    if (r >= 2.0) return JetD::constant(2, order, 0.0);
    JetD one = JetD::constant(2, order, 1.0);
    return one - bump_transition_jet(log_radius_jet(p.x, order));
}

JetD Geometry::cutoff_jet(const ChartPoint& p, int order) const {
    require_in_domain(p);
    if (scenario_ != Scenario::Sphere2) {
        return JetD::constant(dim_, order, 1.0);
    }
    double r = std::sqrt(sqr(p.x[0]) + sqr(p.x[1]));
    if (r <= 2.0) return JetD::constant(2, order, 1.0);
    if (r >= 8.0) return JetD::constant(2, order, 0.0);
    JetD one = JetD::constant(2, order, 1.0);
    JetD u = log_radius_jet(p.x, order) -
             JetD::constant(2, order, 2.0 * kLogHalfWidth);
    return one - bump_transition_jet(u);
}

Vec Geometry::killing_field(int a, const ChartPoint& p) const {
    require_in_domain(p);
    if (a < 0 || a >= group_dim_) {
        throw std::invalid_argument("generator index out of range");
    }
    switch (scenario_) {
        case Scenario::Circle:
            return {1.0};
        case Scenario::Torus2: {
            Vec v(2, 0.0);
            v[a] = 1.0;
            return v;
        }
        case Scenario::Sphere2:
            return {-p.x[1], p.x[0]};
    }
    throw std::logic_error("unreachable scenario tag");
}

MatD Geometry::killing_derivative(int a, const ChartPoint& p) const {
    require_in_domain(p);
    if (a < 0 || a >= group_dim_) {
        throw std::invalid_argument("generator index out of range");
    }
    MatD d(dim_, dim_);
    if (scenario_ == Scenario::Sphere2) {
        d(0, 1) = -1.0;
        d(1, 0) = 1.0;
    }
    return d;
}

Vec Geometry::momentum(const ChartPoint& p, const Vec& xi) const {
    require_in_domain(p);
    if (static_cast<int>(xi.size()) != dim_) {
        throw std::invalid_argument("covector dimension mismatch");
    }
    Vec j(group_dim_, 0.0);
    for (int a = 0; a < group_dim_; ++a) {
        Vec f = killing_field(a, p);
        for (int i = 0; i < dim_; ++i) j[a] += xi[i] * f[i];
    }
    return j;
}

double Geometry::orbit_volume(const ChartPoint& p, const Vec& xi) const {
    require_in_domain(p);
    switch (scenario_) {
        case Scenario::Circle:
            return two_pi;
        case Scenario::Torus2:
            return sqr(two_pi);
        case Scenario::Sphere2: {
            // Orbit speed in chart-Euclidean phase-space coordinates.
            double s2 = sqr(p.x[0]) + sqr(p.x[1]) + sqr(xi[0]) + sqr(xi[1]);
            return two_pi * std::sqrt(s2);
        }
    }
    throw std::logic_error("unreachable scenario tag");
}

Vec Geometry::periodic_difference(const Vec& a, const Vec& b) const {
    if (a.size() != b.size()) {
        throw std::invalid_argument("periodic difference needs equal lengths");
    }
    Vec d(a.size());
    for (size_t i = 0; i < a.size(); ++i) d[i] = principal_angle(a[i] - b[i]);
    return d;
}

cplx Geometry::group_average(const std::function<cplx(const Vec&)>& f,
                             const std::vector<int>& rho,
                             int nodes_per_angle) const {
    if (static_cast<int>(rho.size()) != group_dim_) {
        throw std::invalid_argument("character index dimension mismatch");
    }
    if (nodes_per_angle < 2) {
        throw std::invalid_argument("group average needs at least 2 nodes per angle");
    }
    double h = two_pi / nodes_per_angle;
    Vec angles(group_dim_, 0.0);
    std::vector<int> idx(group_dim_, 0);
    cplx total = 0.0;
    while (true) {
        double phase = 0.0;
        for (int a = 0; a < group_dim_; ++a) {
            angles[a] = (idx[a] + 0.5) * h;
            phase -= rho[a] * angles[a];
        }
        total += f(angles) * std::exp(cplx(0.0, phase));
        int a = 0;
        for (; a < group_dim_; ++a) {
            if (++idx[a] < nodes_per_angle) break;
            idx[a] = 0;
        }
        if (a == group_dim_) break;
    }
    return total / std::pow(double(nodes_per_angle), group_dim_);
}

}  // namespace leflab
