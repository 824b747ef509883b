#ifndef LEFLAB_COMPLEXES_HPP
#define LEFLAB_COMPLEXES_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "leflab/geometry.hpp"
#include "leflab/jet.hpp"

namespace leflab {

// Polynomial in the cotangent variable with jet coefficients in the base
// variable.  Both the polynomial exponents and the jets index off shared
// MultiIndexSet tables, so arithmetic is plain convolution.  Mixed-order
// jet operands are truncated down to the lower order first; derivative
// information above the common order is unreliable anyway once a factor
// has been differentiated.
class PolyJet {
public:
    PolyJet() = default;
    PolyJet(int nxi, int xi_cap, int nx, int x_order);

    static PolyJet constant(const JetC& c, int nxi, int xi_cap);

    int nxi() const { return xis_->nvars(); }
    int xi_cap() const { return xis_->maxdeg(); }
    int nx() const { return c_.empty() ? 0 : c_[0].nvars(); }
    int x_order() const { return c_.empty() ? 0 : c_[0].order(); }
    int nterms() const { return static_cast<int>(c_.size()); }

    const JetC& coeff(const std::vector<int>& beta) const;
    JetC& coeff(const std::vector<int>& beta);
    const JetC& term(int i) const { return c_[i]; }
    const MultiIndexSet& xi_index() const { return *xis_; }

    PolyJet& operator+=(const PolyJet& o);
    PolyJet& operator-=(const PolyJet& o);
    PolyJet& operator*=(cplx s);
    friend PolyJet operator+(PolyJet a, const PolyJet& b) { return a += b; }
    friend PolyJet operator-(PolyJet a, const PolyJet& b) { return a -= b; }
    friend PolyJet operator*(PolyJet a, cplx s) { return a *= s; }
    friend PolyJet operator*(cplx s, PolyJet a) { return a *= s; }
    friend PolyJet operator*(const PolyJet& a, const PolyJet& b);

    // d/dxi_k on the polynomial part; xi capacity is preserved.
    PolyJet deriv_xi(int k) const;
    // d/dx_k on every coefficient jet; drops one stored jet order.
    PolyJet deriv_x(int k) const;

    // Substitute a numeric xi; the result is a jet in x alone.
    JetC eval_xi(const Vec& xi) const;
    // Value at the jet base point and the given xi.
    cplx eval(const Vec& xi) const;

    // Highest xi-degree with a coefficient above tol in any jet entry.
    int top_degree(double tol = 0.0) const;
    // True when every coefficient jet is within tol of zero.
    bool is_zero(double tol = 0.0) const;

private:
    void align_orders(PolyJet& other);

    const MultiIndexSet* xis_ = nullptr;
    std::vector<JetC> c_;
};

PolyJet truncate_x(const PolyJet& p, int x_order);

struct DeRhamData {
    std::vector<int> fiber_rank;  // one entry per form degree 0..n
    std::vector<int> betti;
    int euler;
};

DeRhamData de_rham_data(Scenario s);

// Matrix of the degree-j pullback action on form coefficients at p: the
// j-th exterior power of the transposed action differential.  Columns pair
// with coefficients evaluated at the moved point.
MatD pullback_matrix(const Geometry& geom, int j, const Vec& angles, const ChartPoint& p);

// Character of the group action on degree-j harmonic forms.  The groups
// here are connected, so the action on cohomology is trivial and the
// character is constantly the Betti number.
double harmonic_character(Scenario s, int j, const Vec& angles);

// Raised when a (scenario, degree) pair has no closed-form local symbol
// and callers must fall back to the eigenvalue route.
class SpectralOracleOnly : public std::runtime_error {
public:
    explicit SpectralOracleOnly(const std::string& what) : std::runtime_error(what) {}
};

// Hodge Laplacian symbol in one chart, expanded at a base point.  All
// supported cases are scalar multiples of the identity on the form fiber,
// so only the scalar parts are stored; `rank` records the fiber dimension
// for trace assembly.
struct LocalSymbol {
    Scenario scenario;
    int degree = 0;
    int chart = 0;
    int rank = 1;
    ChartPoint base;
    PolyJet p2, p1, p0;
};

bool symbol_available(Scenario s, int j);

// xi capacity for symbol algebra; generous enough for the products formed
// by five recursion levels on a second-order symbol.
inline constexpr int kXiCap = 12;

LocalSymbol laplace_symbol(const Geometry& geom, int j, const ChartPoint& base, int x_order);

}  // namespace leflab

#endif
