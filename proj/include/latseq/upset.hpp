#pragma once

#include <functional>
#include <vector>

namespace latseq {

/// Multiplicity vector in N_0^m under the componentwise order.
using Vec = std::vector<int>;

/// a >= b componentwise.
bool dominates(const Vec& a, const Vec& b);

/// Sum of entries (the arity of the multiset the vector encodes).
int vec_total(const Vec& a);

bool is_zero(const Vec& a);

/// min(a_i, c) in every coordinate.
Vec cap_vec(const Vec& a, int c);

/// An upward closed subset of N_0^m, stored as its finite antichain of
/// minimal generators (sorted lexicographically, so equal sets compare
/// equal structurally). The empty generator list is the empty set; the
/// single zero generator is all of N_0^m.
class UpwardClosedSet {
public:
    /// Keeps only the minimal vectors of `gens`.
    static UpwardClosedSet from_generators(int m, std::vector<Vec> gens);

    /// Minimal elements of a monotone predicate restricted to the box
    /// [0,bound]^m. If every minimal element of the (full-domain) predicate
    /// lies in the box, the result represents the whole set.
    static UpwardClosedSet from_predicate(int m, int bound,
                                          const std::function<bool(const Vec&)>& member);

    /// Same with one bound per coordinate.
    static UpwardClosedSet from_predicate(int m, const Vec& bounds,
                                          const std::function<bool(const Vec&)>& member);

    static UpwardClosedSet empty(int m) { return from_generators(m, {}); }
    static UpwardClosedSet full(int m) { return from_generators(m, {Vec(m, 0)}); }

    int dim() const { return m_; }
    const std::vector<Vec>& generators() const { return gens_; }
    bool is_empty() const { return gens_.empty(); }

    bool contains(const Vec& a) const;

    /// this subseteq other.
    bool subset_of(const UpwardClosedSet& other) const;

    UpwardClosedSet unite(const UpwardClosedSet& other) const;

    /// Generated by componentwise maxima of generator pairs.
    UpwardClosedSet intersect(const UpwardClosedSet& other) const;

    /// Largest coordinate over all generators, 0 when there are none.
    int cap_degree() const;

    bool operator==(const UpwardClosedSet& other) const {
        return m_ == other.m_ && gens_ == other.gens_;
    }
    bool operator!=(const UpwardClosedSet& other) const { return !(*this == other); }

    /// Total order on sets of equal dimension, used to canonicalize lists.
    bool less_than(const UpwardClosedSet& other) const { return gens_ < other.gens_; }

private:
    UpwardClosedSet(int m, std::vector<Vec> gens) : m_(m), gens_(std::move(gens)) {}

    int m_ = 0;
    std::vector<Vec> gens_;
};

/// Calls fn on every vector of the box [0,bound]^m in lexicographic order
/// (first coordinate most significant), including the zero vector.
void for_each_in_box(int m, int bound, const std::function<void(const Vec&)>& fn);

/// Per-coordinate bounds variant.
void for_each_in_box(int m, const Vec& bounds, const std::function<void(const Vec&)>& fn);

} // namespace latseq
