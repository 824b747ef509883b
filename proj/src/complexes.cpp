#include "leflab/complexes.hpp"

#include <algorithm>
#include <cmath>

namespace leflab {

PolyJet::PolyJet(int nxi, int xi_cap, int nx, int x_order)
    : xis_(&MultiIndexSet::get(nxi, xi_cap)),
      c_(xis_->size(), JetC(nx, x_order)) {}

PolyJet PolyJet::constant(const JetC& c, int nxi, int xi_cap) {
    PolyJet p(nxi, xi_cap, c.nvars(), c.order());
    p.c_[0] = c;
    return p;
}

const JetC& PolyJet::coeff(const std::vector<int>& beta) const {
    int i = xis_->find(beta);
    if (i < 0) throw std::invalid_argument("PolyJet: xi exponent beyond capacity");
    return c_[i];
}

JetC& PolyJet::coeff(const std::vector<int>& beta) {
    int i = xis_->find(beta);
    if (i < 0) throw std::invalid_argument("PolyJet: xi exponent beyond capacity");
    return c_[i];
}

void PolyJet::align_orders(PolyJet& other) {
    if (xis_ != other.xis_) throw std::invalid_argument("PolyJet: xi arity/capacity mismatch");
    int lo = std::min(x_order(), other.x_order());
    if (x_order() > lo) *this = truncate_x(*this, lo);
    if (other.x_order() > lo) other = truncate_x(other, lo);
}

PolyJet& PolyJet::operator+=(const PolyJet& o) {
    PolyJet rhs = o;
    align_orders(rhs);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
    return *this;
}

PolyJet& PolyJet::operator-=(const PolyJet& o) {
    PolyJet rhs = o;
    align_orders(rhs);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= rhs.c_[i];
    return *this;
}

PolyJet& PolyJet::operator*=(cplx s) {
    for (auto& j : c_) j *= s;
    return *this;
}

PolyJet operator*(const PolyJet& a, const PolyJet& b) {
    PolyJet lhs = a, rhs = b;
    lhs.align_orders(rhs);
    const MultiIndexSet& m = *lhs.xis_;
    auto nonzero = [](const std::vector<JetC>& c) {
        std::vector<int> nz;
        for (size_t i = 0; i < c.size(); ++i)
            for (int t = 0; t < c[i].ncoeff(); ++t)
                if (c[i].raw(t) != cplx{}) { nz.push_back(static_cast<int>(i)); break; }
        return nz;
    };
    std::vector<int> la = nonzero(lhs.c_), lb = nonzero(rhs.c_);
    PolyJet r(lhs.nxi(), lhs.xi_cap(), lhs.nx(), lhs.x_order());
    for (int i : la)
        for (int j : lb) {
            int k = m.add(i, j);
            if (k < 0) throw std::invalid_argument("PolyJet: product exceeds xi capacity");
            r.c_[k] += lhs.c_[i] * rhs.c_[j];
        }
    return r;
}

PolyJet PolyJet::deriv_xi(int k) const {
    PolyJet r(nxi(), xi_cap(), nx(), x_order());
    const MultiIndexSet& m = *xis_;
    for (int i = 0; i < m.size(); ++i) {
        const auto& al = m.alpha(i);
        if (al[k] == 0) continue;
        std::vector<int> down = al;
        down[k] -= 1;
        r.c_[m.find(down)] += c_[i] * cplx(static_cast<double>(al[k]), 0.0);
    }
    return r;
}

PolyJet PolyJet::deriv_x(int k) const {
    PolyJet r(nxi(), xi_cap(), nx(), x_order() - 1);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i].deriv(k);
    return r;
}

JetC PolyJet::eval_xi(const Vec& xi) const {
    JetC s(nx(), x_order());
    const MultiIndexSet& m = *xis_;
    for (int i = 0; i < m.size(); ++i) {
        double mono = 1.0;
        const auto& al = m.alpha(i);
        for (int v = 0; v < nxi(); ++v)
            for (int p = 0; p < al[v]; ++p) mono *= xi[v];
        if (mono != 0.0) s += c_[i] * cplx(mono, 0.0);
    }
    return s;
}

cplx PolyJet::eval(const Vec& xi) const {
    cplx s{};
    const MultiIndexSet& m = *xis_;
    for (int i = 0; i < m.size(); ++i) {
        double mono = 1.0;
        const auto& al = m.alpha(i);
        for (int v = 0; v < nxi(); ++v)
            for (int p = 0; p < al[v]; ++p) mono *= xi[v];
        if (mono != 0.0) s += c_[i].value() * mono;
    }
    return s;
}

int PolyJet::top_degree(double tol) const {
    int top = -1;
    if (!xis_) return top;
    const MultiIndexSet& m = *xis_;
    for (int i = 0; i < m.size(); ++i)
        for (int t = 0; t < c_[i].ncoeff(); ++t)
            if (std::abs(c_[i].raw(t)) > tol) {
                top = std::max(top, m.degree(i));
                break;
            }
    return top;
}

bool PolyJet::is_zero(double tol) const { return top_degree(tol) < 0; }

PolyJet truncate_x(const PolyJet& p, int x_order) {
    PolyJet r(p.nxi(), p.xi_cap(), p.nx(), x_order);
    for (int i = 0; i < p.nterms(); ++i) r.coeff(p.xi_index().alpha(i)) = jet_truncate(p.term(i), x_order);
    return r;
}

DeRhamData de_rham_data(Scenario s) {
    switch (s) {
        case Scenario::Circle:
            return {{1, 1}, {1, 1}, 0};
        case Scenario::Torus2:
            return {{1, 2, 1}, {1, 2, 1}, 0};
        case Scenario::Sphere2:
            return {{1, 2, 1}, {1, 0, 1}, 2};
    }
    throw std::logic_error("unknown scenario");
}

MatD pullback_matrix(const Geometry& geom, int j, const Vec& angles, const ChartPoint& p) {
    if (j < 0 || j > geom.dim()) throw std::invalid_argument("pullback_matrix: degree out of range");
    if (j == 0) {
        MatD m(1, 1);
        m(0, 0) = 1.0;
        return m;
    }
    MatD jac = geom.act(angles, p).differential;
    if (j == 1) return transpose(jac);
    // j == geom.dim() == 2: top-degree forms scale by the Jacobian determinant.
    MatD m(1, 1);
    m(0, 0) = jac(0, 0) * jac(1, 1) - jac(0, 1) * jac(1, 0);
    return m;
}

double harmonic_character(Scenario s, int j, const Vec&) {
    const DeRhamData data = de_rham_data(s);
    if (j < 0 || j >= static_cast<int>(data.betti.size()))
        throw std::invalid_argument("harmonic_character: degree out of range");
    return static_cast<double>(data.betti[j]);
}

bool symbol_available(Scenario s, int j) {
    if (s == Scenario::Circle || s == Scenario::Torus2) return true;
    return j == 0;
}

LocalSymbol laplace_symbol(const Geometry& geom, int j, const ChartPoint& base, int x_order) {
    const Scenario s = geom.scenario();
    if (j < 0 || j > geom.dim()) throw std::invalid_argument("laplace_symbol: degree out of range");
    if (!symbol_available(s, j))
        throw SpectralOracleOnly("no closed-form chart symbol for " + scenario_name(s) +
                                 " degree " + std::to_string(j) + "; use the eigenvalue route");

    const int n = geom.dim();
    LocalSymbol sym;
    sym.scenario = s;
    sym.degree = j;
    sym.chart = base.chart;
    sym.rank = de_rham_data(s).fiber_rank[j];
    sym.base = base;
    sym.p2 = PolyJet(n, kXiCap, n, x_order);
    sym.p1 = PolyJet(n, kXiCap, n, x_order);
    sym.p0 = PolyJet(n, kXiCap, n, x_order);

    // Leading part: inverse-metric quadratic form.  The charts in play are
    // conformally flat, so this is a single scalar profile times |xi|^2;
    // in two dimensions that same conformal rescaling is the entire
    // operator on each fixed degree and the lower-order parts vanish.
    JetC conf = s == Scenario::Sphere2 ? jet_complexify(geom.conformal_factor_jet(base, x_order))
                                       : JetC(n, x_order, cplx(1.0, 0.0));
    for (int v = 0; v < n; ++v) {
        std::vector<int> beta(n, 0);
        beta[v] = 2;
        sym.p2.coeff(beta) = conf;
    }
    return sym;
}

}  // namespace leflab
