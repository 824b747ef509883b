#ifndef LEFLAB_SPECTRAL_HPP
#define LEFLAB_SPECTRAL_HPP

#include <vector>

#include "leflab/geometry.hpp"

namespace leflab {

// One eigenspace slice: eigenvalue, trace of the group element on it, and
// the space's dimension (the a priori bound on that trace).
struct SpectralLevel {
    double lambda;
    cplx character;
    double dim;
};

// All levels with eigenvalue parameter up to `cutoff` (mode index for the
// flat scenarios, total angular momentum for the sphere), non-decreasing
// in lambda.
std::vector<SpectralLevel> spectral_levels(Scenario s, int j, const Vec& angles, int cutoff);

struct HeatSum {
    cplx value;
    double tail_bound;  // certified bound on everything beyond the cutoff
    int cutoff;
};

inline constexpr int kFlatCutoff = 40;
inline constexpr int kSphereCutoff = 60;
int default_spectral_cutoff(Scenario s);

// Smallest cutoff whose certified tail bound drops below tol at this t.
int spectral_cutoff_for(Scenario s, double t, double tol);

// Sum of character * exp(-t lambda) over the truncated spectrum.
// cutoff < 0 selects the scenario default.
HeatSum heat_character_sum(Scenario s, int j, const Vec& angles, double t, int cutoff = -1);

// Alternating sum over form degrees; tail bounds accumulate.
HeatSum supertrace(Scenario s, const Vec& angles, double t, int cutoff = -1);

// Alternating sum of harmonic characters; equals the Euler characteristic
// at the identity (and everywhere here, the groups being connected).
cplx lefschetz_cohomology(Scenario s, const Vec& angles);

}  // namespace leflab

#endif
