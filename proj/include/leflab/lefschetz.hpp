#ifndef LEFLAB_LEFSCHETZ_HPP
#define LEFLAB_LEFSCHETZ_HPP

// Assembly layer for Lefschetz numbers: alternating heat supertraces, the
// classical fixed-point sum, character-averaged equivariant values, and the
// constant term of the short-time heat expansion.  Every report keeps its
// per-degree pieces so cancellations stay checkable.

#include <string>
#include <vector>

#include "leflab/common.hpp"
#include "leflab/geometry.hpp"

namespace leflab {

// One evaluation at a single group element or a single character index.
// degree_terms are unsigned; value carries the alternating signs.
struct LefschetzReport {
    Scenario scenario;
    std::string method;  // cohomology | heat-spectral | heat-parametrix |
                         // fixed-point | constant-term | t-extraction
    Vec angles;          // group element, for pointwise routes
    std::vector<int> rho;        // character index, for averaged routes
    std::vector<int> degrees;    // form degree behind each entry below
    std::vector<cplx> degree_terms;
    cplx value{};
    double error = 0.0;
    std::vector<std::string> notes;
};

// Sum of (-1)^degree * term; every report's value equals this within 1e-12.
cplx signed_degree_sum(const std::vector<int>& degrees,
                       const std::vector<cplx>& terms);

enum class HeatEngine { Spectral, Parametrix };

struct HeatOptions {
    int spectral_cutoff = -1;    // negative: scenario default
    int parametrix_levels = -1;  // negative: scenario default
};

// Alternating sum over form degrees of the twisted heat trace at time t.
// The parametrix engine needs a chart symbol per degree; a degree without
// one falls back to the eigenvalue sum, recorded in the notes.
LefschetzReport lefschetz_heat(const Geometry& geom, const Vec& angles,
                               double t, HeatEngine engine,
                               const HeatOptions& opts = {});

// Fixed-point evaluation at an element with isolated transversal fixed
// points: each contributes its alternating pullback traces divided by
// |det(1 - dg_x)|.  An element fixing a positive-dimensional set is
// rejected with that set named in the message.
LefschetzReport atiyah_bott(const Geometry& geom, const Vec& angles);

enum class AverageRoute { Cohomology, HeatSpectral, FixedPoint };

struct AverageOptions {
    double t = 0.3;           // heat time for the spectral route
    int nodes_per_angle = 0;  // zero: route default (32 heat, 16 otherwise)
};

// Haar average of the pointwise Lefschetz value against the conjugated
// character.  The fixed-point route averages a function defined away from
// the degenerate elements; the half-shifted grid never samples those, and
// an exact hit would take the cohomology value instead.
LefschetzReport equivariant_lefschetz(const Geometry& geom,
                                      const std::vector<int>& rho,
                                      AverageRoute route,
                                      const AverageOptions& opts = {});

enum class ConstantTermMode { Exact, Extraction };

struct ConstantTermOptions {
    std::vector<int> degrees;  // empty: every form degree
    Vec t_grid;                // extraction heat times; empty: module default
    HeatEngine engine = HeatEngine::Spectral;  // extraction trace engine
    HeatOptions heat;
    int nodes_per_angle = 32;
};

// Constant term of the small-t expansion of the character-averaged heat
// supertrace.  Exact mode needs principal orbits of full dimension and
// integrates the restricted amplitude over the critical set per degree,
// cross-checking degree zero against the orbit-reduced form; extraction
// mode fits the constant from evaluations on a t grid and works on every
// scenario.
LefschetzReport heat_constant_term(const Geometry& geom,
                                   const std::vector<int>& rho,
                                   ConstantTermMode mode,
                                   const ConstantTermOptions& opts = {});

}  // namespace leflab

#endif
