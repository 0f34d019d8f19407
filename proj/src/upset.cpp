#include "latseq/upset.hpp"

#include <algorithm>

#include "latseq/errors.hpp"

namespace latseq {

bool dominates(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] < b[i]) return false;
    return true;
}

int vec_total(const Vec& a) {
    int s = 0;
    for (int x : a) s += x;
    return s;
}

bool is_zero(const Vec& a) {
    return std::all_of(a.begin(), a.end(), [](int x) { return x == 0; });
}

Vec cap_vec(const Vec& a, int c) {
    Vec r(a);
    for (int& x : r) x = std::min(x, c);
    return r;
}

UpwardClosedSet UpwardClosedSet::from_generators(int m, std::vector<Vec> gens) {
    for (const Vec& g : gens) {
        if ((int)g.size() != m)
            fail(ErrorKind::DimensionMismatch, "generator has length " +
                                                   std::to_string(g.size()) + ", expected " +
                                                   std::to_string(m));
        for (int x : g)
            if (x < 0) fail(ErrorKind::DimensionMismatch, "negative generator entry");
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    // drop dominated vectors
    std::vector<Vec> minimal;
    for (size_t i = 0; i < gens.size(); ++i) {
        bool dominated = false;
        for (size_t j = 0; j < gens.size() && !dominated; ++j)
            if (i != j && dominates(gens[i], gens[j]) && gens[i] != gens[j]) dominated = true;
        if (!dominated) minimal.push_back(gens[i]);
    }
    return UpwardClosedSet(m, std::move(minimal));
}

void for_each_in_box(int m, int bound, const std::function<void(const Vec&)>& fn) {
    Vec a(m, 0);
    while (true) {
        fn(a);
        int i = m - 1;
        while (i >= 0 && a[i] == bound) a[i--] = 0;
        if (i < 0) break;
        ++a[i];
    }
}

void for_each_in_box(int m, const Vec& bounds, const std::function<void(const Vec&)>& fn) {
    Vec a(m, 0);
    while (true) {
        fn(a);
        int i = m - 1;
        while (i >= 0 && a[i] == bounds[i]) a[i--] = 0;
        if (i < 0) break;
        ++a[i];
    }
}

UpwardClosedSet UpwardClosedSet::from_predicate(int m, int bound,
                                                const std::function<bool(const Vec&)>& member) {
    return from_predicate(m, Vec(m, bound), member);
}

UpwardClosedSet UpwardClosedSet::from_predicate(int m, const Vec& bounds,
                                                const std::function<bool(const Vec&)>& member) {
    std::vector<Vec> gens;
    for_each_in_box(m, bounds, [&](const Vec& a) {
        if (!member(a)) return;
        Vec below(a);
        for (int i = 0; i < m; ++i) {
            if (a[i] == 0) continue;
            --below[i];
            bool inside = member(below);
            ++below[i];
            if (inside) return; // not minimal
        }
        gens.push_back(a);
    });
    return from_generators(m, std::move(gens));
}

bool UpwardClosedSet::contains(const Vec& a) const {
    if ((int)a.size() != m_)
        fail(ErrorKind::DimensionMismatch, "membership query of length " +
                                               std::to_string(a.size()) + " against dimension " +
                                               std::to_string(m_));
    for (const Vec& g : gens_)
        if (dominates(a, g)) return true;
    return false;
}

bool UpwardClosedSet::subset_of(const UpwardClosedSet& other) const {
    if (m_ != other.m_)
        fail(ErrorKind::DimensionMismatch, "subset test across dimensions");
    for (const Vec& g : gens_)
        if (!other.contains(g)) return false;
    return true;
}

UpwardClosedSet UpwardClosedSet::unite(const UpwardClosedSet& other) const {
    if (m_ != other.m_) fail(ErrorKind::DimensionMismatch, "union across dimensions");
    std::vector<Vec> gens = gens_;
    gens.insert(gens.end(), other.gens_.begin(), other.gens_.end());
    return from_generators(m_, std::move(gens));
}

UpwardClosedSet UpwardClosedSet::intersect(const UpwardClosedSet& other) const {
    if (m_ != other.m_) fail(ErrorKind::DimensionMismatch, "intersection across dimensions");
    std::vector<Vec> gens;
    gens.reserve(gens_.size() * other.gens_.size());
    for (const Vec& g : gens_)
        for (const Vec& h : other.gens_) {
            Vec top(m_);
            for (int i = 0; i < m_; ++i) top[i] = std::max(g[i], h[i]);
            gens.push_back(std::move(top));
        }
    return from_generators(m_, std::move(gens));
}

int UpwardClosedSet::cap_degree() const {
    int c = 0;
    for (const Vec& g : gens_)
        for (int x : g) c = std::max(c, x);
    return c;
}

} // namespace latseq
