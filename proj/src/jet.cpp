#include "leflab/jet.hpp"

#include <mutex>

namespace leflab {

namespace {

void enumerate(int nvars, int maxdeg, int deg, std::vector<std::vector<int>>& out) {
    // All multi-indices of total degree exactly deg, lexicographic.
    std::vector<int> al(nvars, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == nvars - 1) {
            al[pos] = left;
            out.push_back(al);
            return;
        }
        for (int k = left; k >= 0; --k) {
            al[pos] = k;
            rec(pos + 1, left - k);
        }
    };
    if (nvars == 0) {
        if (deg == 0) out.push_back({});
        return;
    }
    rec(0, deg);
    (void)maxdeg;
}

}  // namespace

MultiIndexSet::MultiIndexSet(int nvars, int maxdeg) : nvars_(nvars), maxdeg_(maxdeg) {
    for (int d = 0; d <= maxdeg; ++d) enumerate(nvars, maxdeg, d, idx_);
    deg_.resize(idx_.size());
    fact_.resize(idx_.size());
    for (size_t i = 0; i < idx_.size(); ++i) {
        int d = 0;
        double f = 1.0;
        for (int v : idx_[i]) {
            d += v;
            for (int k = 2; k <= v; ++k) f *= k;
        }
        deg_[i] = d;
        fact_[i] = f;
        lookup_[idx_[i]] = static_cast<int>(i);
    }
}

const MultiIndexSet& MultiIndexSet::get(int nvars, int maxdeg) {
    if (nvars < 0 || nvars > 8 || maxdeg < 0 || maxdeg > 12)
        throw std::invalid_argument("multi-index set bounds: nvars <= 8, maxdeg <= 12");
    static std::mutex mu;
    static std::map<std::pair<int, int>, MultiIndexSet*> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(nvars, maxdeg);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, new MultiIndexSet(nvars, maxdeg)).first;
    return *it->second;
}

int MultiIndexSet::find(const std::vector<int>& alpha) const {
    auto it = lookup_.find(alpha);
    return it == lookup_.end() ? -1 : it->second;
}

int MultiIndexSet::add(int i, int j) const {
    if (deg_[i] + deg_[j] > maxdeg_) return -1;
    std::vector<int> s = idx_[i];
    for (int v = 0; v < nvars_; ++v) s[v] += idx_[j][v];
    return find(s);
}

int MultiIndexSet::bump(int i, int k) const {
    if (deg_[i] + 1 > maxdeg_) return -1;
    std::vector<int> s = idx_[i];
    s[k] += 1;
    return find(s);
}

}  // namespace leflab
