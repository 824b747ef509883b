#include "leflab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "leflab/complexes.hpp"

namespace leflab {

namespace {

void check_args(Scenario s, int j, const Vec& angles, double t) {
    Geometry geom(s);
    if (t <= 0.0) throw std::invalid_argument("heat sum requires t > 0");
    if (j < 0 || j > geom.dim()) throw std::invalid_argument("form degree out of range");
    if (static_cast<int>(angles.size()) != geom.group_dim())
        throw std::invalid_argument("group element has wrong number of angles");
}

// Dirichlet kernel: trace of the rotation by phi on the (2l+1)-dimensional
// harmonic level.
double dirichlet(int l, double phi) {
    double s = 1.0;
    for (int m = 1; m <= l; ++m) s += 2.0 * std::cos(m * phi);
    return s;
}

// Certified bound on 2 sum_{k>K} exp(-t k^2): compare with the geometric
// series obtained from k^2 >= (K+1)^2 + 2(K+1)(k-K-1).
double theta_tail(int K, double t) {
    double q = std::exp(-2.0 * t * (K + 1));
    return 2.0 * std::exp(-t * sqr(static_cast<double>(K + 1))) / (1.0 - q);
}

// One-axis absolute sum sum_{|k|<=K} exp(-t k^2).
double theta_abs(int K, double t) {
    double s = 1.0;
    for (int k = 1; k <= K; ++k) s += 2.0 * std::exp(-t * sqr(static_cast<double>(k)));
    return s;
}

// Certified bound on sum_{l>L} (2l+1) exp(-t l(l+1)) via the comparison
// l(l+1) >= L(L+1) + 2(L+1)(l-L).
double sphere_tail(int L, double t) {
    double q = std::exp(-2.0 * t * (L + 1));
    double head = std::exp(-t * L * (L + 1.0));
    return head * ((2.0 * L + 1.0) * q / (1.0 - q) + 2.0 * q / sqr(1.0 - q));
}

double tail_bound_for(Scenario s, int j, double t, int cutoff) {
    switch (s) {
        case Scenario::Circle:
            return theta_tail(cutoff, t);
        case Scenario::Torus2: {
            // Box truncation of a product of two theta sums: the dropped
            // mass is bounded by tau*(2*S + tau) per unit multiplicity.
            double mult = de_rham_data(s).fiber_rank[j];
            double tau = theta_tail(cutoff, t);
            double sabs = theta_abs(cutoff, t);
            return mult * tau * (2.0 * sabs + tau);
        }
        case Scenario::Sphere2: {
            double mult = j == 1 ? 2.0 : 1.0;
            return mult * sphere_tail(cutoff, t);
        }
    }
    throw std::logic_error("unknown scenario");
}

}  // namespace

std::vector<SpectralLevel> spectral_levels(Scenario s, int j, const Vec& angles, int cutoff) {
    std::vector<SpectralLevel> out;
    switch (s) {
        case Scenario::Circle: {
            double phi = angles[0];
            for (int k = -cutoff; k <= cutoff; ++k)
                out.push_back({sqr(static_cast<double>(k)),
                               cplx(std::cos(k * phi), std::sin(k * phi)), 1.0});
            break;
        }
        case Scenario::Torus2: {
            double mult = de_rham_data(s).fiber_rank[j];
            for (int k1 = -cutoff; k1 <= cutoff; ++k1)
                for (int k2 = -cutoff; k2 <= cutoff; ++k2) {
                    double ph = k1 * angles[0] + k2 * angles[1];
                    out.push_back({sqr(static_cast<double>(k1)) + sqr(static_cast<double>(k2)),
                                   mult * cplx(std::cos(ph), std::sin(ph)), mult});
                }
            break;
        }
        case Scenario::Sphere2: {
            double phi = angles[0];
            for (int l = 0; l <= cutoff; ++l) {
                double lam = l * (l + 1.0);
                double dl = dirichlet(l, phi);
                double dim = 2.0 * l + 1.0;
                if (j == 0 || j == 2) {
                    out.push_back({lam, cplx(dl, 0.0), dim});
                } else if (l >= 1) {
                    // Exact and coexact families share the level data.
                    out.push_back({lam, cplx(dl, 0.0), dim});
                    out.push_back({lam, cplx(dl, 0.0), dim});
                }
            }
            break;
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const SpectralLevel& a, const SpectralLevel& b) { return a.lambda < b.lambda; });
    return out;
}

int default_spectral_cutoff(Scenario s) {
    return s == Scenario::Sphere2 ? kSphereCutoff : kFlatCutoff;
}

int spectral_cutoff_for(Scenario s, double t, double tol) {
    if (t <= 0.0) throw std::invalid_argument("heat sum requires t > 0");
    int k = default_spectral_cutoff(s);
    while (tail_bound_for(s, 1, t, k) > tol) {
        k += k / 2;
        if (k > 1000000) throw std::invalid_argument("tail tolerance unreachable");
    }
    return k;
}

HeatSum heat_character_sum(Scenario s, int j, const Vec& angles, double t, int cutoff) {
    check_args(s, j, angles, t);
    if (cutoff < 0) cutoff = default_spectral_cutoff(s);
    cplx v{};
    for (const auto& lv : spectral_levels(s, j, angles, cutoff))
        v += lv.character * std::exp(-t * lv.lambda);
    return {v, tail_bound_for(s, j, t, cutoff), cutoff};
}

HeatSum supertrace(Scenario s, const Vec& angles, double t, int cutoff) {
    Geometry geom(s);
    cplx v{};
    double tail = 0.0;
    int used = cutoff;
    double sign = 1.0;
    for (int j = 0; j <= geom.dim(); ++j, sign = -sign) {
        HeatSum h = heat_character_sum(s, j, angles, t, cutoff);
        v += sign * h.value;
        tail += h.tail_bound;
        used = h.cutoff;
    }
    return {v, tail, used};
}

cplx lefschetz_cohomology(Scenario s, const Vec& angles) {
    Geometry geom(s);
    double v = 0.0, sign = 1.0;
    for (int j = 0; j <= geom.dim(); ++j, sign = -sign)
        v += sign * harmonic_character(s, j, angles);
    return cplx(v, 0.0);
}

}  // namespace leflab
