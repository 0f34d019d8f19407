#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace latseq {

/// A finite bounded lattice over named elements. Built by taking the
/// reflexive-transitive closure of an input relation and computing full
/// meet/join tables; every instance that exists has passed the glb/lub
/// uniqueness checks. The position of an element in the input list is its
/// canonical index, used by every vector encoding downstream.
class Lattice {
public:
    /// Order relation given as arbitrary pairs (a, b) meaning a <= b; the
    /// closure is taken. Throws NotAPoset / NotALattice with a witness pair.
    static Lattice build(std::vector<std::string> elements,
                         const std::vector<std::pair<std::string, std::string>>& order_pairs);

    int size() const { return m_; }
    const std::vector<std::string>& elements() const { return elems_; }
    const std::string& label(int i) const { return elems_[i]; }

    /// Index of a label, or -1.
    int index_of(const std::string& id) const;
    /// Index of a label; throws UnknownName.
    int require_index(const std::string& id) const;

    bool leq(int a, int b) const { return leq_[(size_t)a * m_ + b] != 0; }
    int meet(int a, int b) const { return meet_[(size_t)a * m_ + b]; }
    int join(int a, int b) const { return join_[(size_t)a * m_ + b]; }
    int bottom() const { return bottom_; }
    int top() const { return top_; }

    /// Length of a longest chain from bottom to the element.
    int height(int a) const { return height_[a]; }

    /// b covers a: a < b with nothing strictly between.
    bool covers(int a, int b) const;
    std::vector<int> lower_covers(int a) const;
    std::vector<int> upper_covers(int a) const;

    /// Same element labels in the same order with the same relation.
    bool same_content(const Lattice& other) const;

    struct ProductInfo {
        std::shared_ptr<const Lattice> left;
        std::shared_ptr<const Lattice> right;
    };
    const std::optional<ProductInfo>& product_info() const { return product_; }
    /// Element index of the pair (i, j) in a product lattice.
    int product_index(int i, int j) const;
    std::pair<int, int> factor_indices(int k) const;

private:
    friend Lattice product(const Lattice& l1, const Lattice& l2);
    friend Lattice interval(const Lattice& l, int a, int b);

    Lattice() = default;
    static Lattice from_closed_leq(std::vector<std::string> elements, std::vector<uint8_t> leq);
    void compute_tables(); // meet/join/bounds/heights from leq_

    int m_ = 0;
    std::vector<std::string> elems_;
    std::unordered_map<std::string, int> index_;
    std::vector<uint8_t> leq_;
    std::vector<int> meet_, join_;
    int bottom_ = 0, top_ = 0;
    std::vector<int> height_;
    std::optional<ProductInfo> product_;
};

/// A pair (delta, epsilon) with delta < 1, epsilon > 0 and every element
/// either <= delta or >= epsilon; strong when delta >= epsilon.
struct SplittingPair {
    int delta = -1;
    int epsilon = -1;
    bool strong = false;

    bool operator==(const SplittingPair& o) const {
        return delta == o.delta && epsilon == o.epsilon && strong == o.strong;
    }
};

struct ModularityWitness {
    int x = -1, y = -1, z = -1; // x <= z but x v (y ^ z) != (x v y) ^ z
};

/// nullopt when the lattice is modular.
std::optional<ModularityWitness> modularity_counterexample(const Lattice& l);
bool is_modular(const Lattice& l);

/// Covers of bottom / lower covers of top. Throw TrivialLattice when |L| < 2.
std::vector<int> atoms(const Lattice& l);
std::vector<int> coatoms(const Lattice& l);

/// All splitting pairs ordered by (delta, epsilon) index; empty means the
/// lattice does not split. Throws TrivialLattice when |L| = 1.
std::vector<SplittingPair> splitting_pairs(const Lattice& l);

/// The least strong splitting pair, if any. Throws TrivialLattice when |L| = 1.
std::optional<SplittingPair> splits_strongly(const Lattice& l);

/// The sublattice {x : a <= x <= b} with induced order; labels are kept.
/// Throws NotComparable when a !<= b.
Lattice interval(const Lattice& l, int a, int b);

/// Componentwise product; element (i, j) gets index i*|l2|+j and label
/// "(x,y)". The factors are recorded for projections.
Lattice product(const Lattice& l1, const Lattice& l2);

/// A meet/join-preserving bijection l1 -> l2 (as an index map), if one
/// exists. Backtracking pruned by (height, #lower covers, #upper covers).
std::optional<std::vector<int>> is_isomorphic(const Lattice& l1, const Lattice& l2);

/// Result of peeling two-element factors off a lattice that does not split
/// strongly: an isomorphism onto core x {0,1}^n with a non-splitting core.
struct Decomposition {
    std::shared_ptr<const Lattice> core;
    int b2_power = 0;
    /// Per source element: (core element index, factor bits). Bit k comes
    /// from the k-th peeling step.
    std::vector<std::pair<int, std::vector<int>>> iso;
};

/// Requires a modular lattice with no strong splitting pair (errors
/// NotModular / StronglySplits). While a splitting pair exists, picks the
/// least atom below its epsilon and the least coatom above its delta, maps
/// x to (x ^ delta, x ^ epsilon) and recurses on [0, delta].
Decomposition decompose(const Lattice& l);

/// Built-in lattices: B2, M2 (= B2 x B2), Mk for k >= 3 (height-2 with k
/// atoms), Cn for n >= 1 (n-element chain), N5, ONE. Throws UnknownName.
Lattice catalog(const std::string& name);

/// Exhaustive re-verification of the lattice axioms; used by `validate`.
struct LatticeAxiomReport {
    bool reflexive = true, antisymmetric = true, transitive = true;
    bool bounds_ok = true, glb_lub = true, commutative = true;
    bool associative = true, idempotent = true, absorption = true;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};
LatticeAxiomReport verify_lattice_axioms(const Lattice& l);

/// True iff (delta, epsilon) satisfies the splitting-pair definition.
bool is_splitting_pair(const Lattice& l, int delta, int epsilon);

} // namespace latseq
