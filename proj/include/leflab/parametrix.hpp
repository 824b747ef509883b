#ifndef LEFLAB_PARAMETRIX_HPP
#define LEFLAB_PARAMETRIX_HPP

#include <string>
#include <vector>

#include "leflab/complexes.hpp"
#include "leflab/geometry.hpp"

namespace leflab {

// Truncated resolvent expansion level: r_k = sum_j A_j (p2 - lambda)^{-j}
// with scalar coefficients on the form fiber.  pole_terms[j-1] carries A_j;
// the list length bounds the pole order by construction.
struct ResolventSymbol {
    int level = 0;
    int rank = 1;
    LocalSymbol symbol;
    std::vector<PolyJet> pole_terms;

    int max_pole_order() const { return static_cast<int>(pole_terms.size()); }
    // Value of the rational expansion at (base + dx listed in the jets, xi)
    // for a fixed spectral parameter.
    cplx eval(const Vec& xi, cplx lambda) const;
};

// Highest supported expansion level; the default used by trace assembly
// while flat scenarios need none at all.
inline constexpr int kResolventCap = 3;

std::vector<ResolventSymbol> resolvent_levels(const LocalSymbol& sym, int kmax);
ResolventSymbol resolvent_recursion(const LocalSymbol& sym, int k);

struct HeatSymbolValue {
    int level = 0;
    double t = 0.0;
    cplx scalar;  // multiplies the identity on the form fiber
    int rank = 1;
};

// Closed-form residue evaluation of the contour integral of
// exp(-t lambda) against the resolvent level, at chart offset x from the
// expansion base.
HeatSymbolValue heat_symbol(const ResolventSymbol& r, double t, const Vec& x, const Vec& xi);

// Circle in the spectral plane for the quadrature cross-check.
struct ContourSpec {
    cplx center;
    double radius = 1.0;
    int nodes = 64;
    bool counterclockwise = false;
};

// Numerical (1/2 pi i) contour integral of exp(-t lambda) (q - lambda)^{-j}
// around the pole at q.
cplx contour_heat_term(double t, double q, int pole_order, const ContourSpec& spec);

struct TraceResult {
    cplx value;
    double error_estimate = 0.0;
    bool converged = true;
    std::string flag;
};

// Localized heat-trace sum over expansion levels k <= K: chart integrals of
// the oscillatory cotangent transform of the level-k heat symbol against
// the cutoff pair and the degree-j pullback trace, weighted t^{(k-n)/2}.
TraceResult equivariant_trace_parametrix(Scenario s, int j, const Vec& angles, double t, int K);

// Scenario defaults for the level cap: flat scenarios terminate at 0.
int default_trace_levels(Scenario s);

}  // namespace leflab

#endif
