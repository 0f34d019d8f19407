#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "latseq/lattice.hpp"
#include "latseq/upset.hpp"

namespace latseq {

/// Canonical presentation of an operation sequence on a lattice with m
/// elements: for each lattice element a, the upward closed level set
/// R(a) = { v in N_0^m \ {0} : E(v) <= a }, where E(v) evaluates the
/// sequence on the multiset of elements encoded by v. The family is finite
/// data (one generator antichain per level) and determines the whole
/// sequence, of every arity.
class SequencePresentation {
public:
    /// Validates the level family: one level per element, nonzero
    /// generators, levels(x ^ y) = levels(x) n levels(y) for all pairs,
    /// and the top level containing every nonzero vector. Throws
    /// InvalidPresentation with a witness otherwise.
    SequencePresentation(std::shared_ptr<const Lattice> lattice,
                         std::vector<UpwardClosedSet> levels);

    const Lattice& lattice() const { return *lattice_; }
    const std::shared_ptr<const Lattice>& lattice_ptr() const { return lattice_; }
    const UpwardClosedSet& level(int element) const { return levels_[element]; }
    const std::vector<UpwardClosedSet>& levels() const { return levels_; }

    /// max(1, largest generator coordinate over all levels). Evaluation is
    /// invariant under capping coordinates at this degree.
    int cap_degree() const { return cap_; }

    /// E(v): the least element whose level contains v. Defined for every
    /// nonzero v, with no capping required.
    int eval_vector(const Vec& v) const;

    /// f_n applied to the argument list (n = args.size()); order of the
    /// arguments cannot matter because only their multiset is encoded.
    /// Throws EmptyArgs.
    int evaluate(const std::vector<int>& args) const;

    bool operator==(const SequencePresentation& other) const;
    bool operator!=(const SequencePresentation& other) const { return !(*this == other); }

    /// Canonical order among presentations on the same lattice.
    bool less_than(const SequencePresentation& other) const;

private:
    std::shared_ptr<const Lattice> lattice_;
    std::vector<UpwardClosedSet> levels_;
    int cap_ = 1;
};

/// Finite value table: E on all nonzero vectors of total <= bound, with the
/// fixed policy that everything larger evaluates to bottom. Values must
/// respect E(v) <= meet of the support of v; anything else is rejected at
/// construction (InconsistentTable).
class TruncatedTable {
public:
    TruncatedTable(std::shared_ptr<const Lattice> lattice, int bound, std::map<Vec, int> values);

    const Lattice& lattice() const { return *lattice_; }
    const std::shared_ptr<const Lattice>& lattice_ptr() const { return lattice_; }
    int bound() const { return bound_; }
    const std::map<Vec, int>& values() const { return values_; }

    /// Stored value, or bottom beyond the bound. v must be nonzero.
    int eval(const Vec& v) const;

private:
    std::shared_ptr<const Lattice> lattice_;
    int bound_ = 1;
    std::map<Vec, int> values_;
};

struct AxiomCheck {
    std::string axiom;          // "HC1", "HC2", "HC3", "HC4", "HC7", "HC8"
    bool passed = true;
    long long violations = 0;   // 0 when passed
    std::string witness;        // first violating instance, in scan order
};

struct AdmissibilityReport {
    std::vector<AxiomCheck> axioms;
    bool admissible() const {
        for (const auto& a : axioms)
            if (!a.passed) return false;
        return true;
    }
    const AxiomCheck& axiom(const std::string& name) const;
};

/// Verifies the admissibility axioms for the sequence the presentation
/// determines, quantifying over a finite box that is sound and complete by
/// the capping property. `early_exit` stops at the first violation.
AdmissibilityReport check_admissible(const SequencePresentation& p, bool early_exit = false);

/// Same for a raw evaluation rule extended by capping coordinates at `cap`:
/// the sequence checked is a |-> eval(min(a_i, cap) per coordinate). eval is
/// queried on nonzero vectors with entries <= cap only.
AdmissibilityReport check_admissible_eval(const Lattice& l, int cap,
                                          const std::function<int(const Vec&)>& eval,
                                          bool early_exit = false);

/// Same, for the zero-tailed sequence a truncated table determines. The
/// table itself need not be consistent; violations come back in the report.
AdmissibilityReport check_admissible(const TruncatedTable& t, bool early_exit = false);

/// Levels of the zero-tailed sequence of the table. Requires the table to
/// be antitone (larger vectors get smaller values); otherwise the levels
/// would not be upward closed and the call fails with InconsistentTable.
SequencePresentation from_truncated_table(const TruncatedTable& t);

/// Pointwise order: p <= q iff every level of q is contained in the same
/// level of p. Throws LatticeMismatch.
bool leq_sequences(const SequencePresentation& p, const SequencePresentation& q);

/// Independent route to the same order: compare f_n values on every
/// argument tuple of arity <= max_arity.
bool pointwise_leq(const SequencePresentation& p, const SequencePresentation& q, int max_arity);

/// The sequence on product(L1, L2) acting componentwise as (p1, p2).
SequencePresentation product_sequence(const SequencePresentation& p1,
                                      const SequencePresentation& p2);

/// Factor sequence of a presentation living on a recorded product:
/// side 1 keeps the first coordinate of E applied to arguments with the
/// other coordinate forced to bottom. Throws NotAProduct.
SequencePresentation project_sequence(const SequencePresentation& p, int side);

/// Relabels a presentation along a bijection: to_source[i] is the index in
/// p's lattice matching element i of `target`.
SequencePresentation transport_sequence(const SequencePresentation& p,
                                        std::shared_ptr<const Lattice> target,
                                        const std::vector<int>& to_source);

struct CentralSeries {
    std::vector<int> terms;  // starts at top, strictly decreasing
    bool nilpotent = false;
    int nilpotency_class = -1;  // terms.size()-1 when nilpotent
};

/// gamma_1 = top, gamma_{n+1} = f_2(top, gamma_n); stops at bottom
/// (nilpotent) or at the first repeat (not nilpotent).
CentralSeries lower_central_series(const SequencePresentation& p);

/// Least N with f_N(top,...,top) = bottom, if the values ever get there.
std::optional<int> vanishing_arity(const SequencePresentation& p);

/// The three admissible sequences on a two-element lattice: constant
/// bottom; identity at arity 1 and bottom beyond; and the meet sequence.
std::vector<SequencePresentation> b2_sequences(std::shared_ptr<const Lattice> b2);

/// The sequence a strong splitting pair (delta, epsilon) generates:
/// f_1 = identity, and for n >= 2 the value is bottom when some argument
/// is below delta and epsilon otherwise. Throws NotStrong.
SequencePresentation strong_pair_sequence(std::shared_ptr<const Lattice> l,
                                          const SplittingPair& pair);

/// Builds a presentation from any evaluation rule that is stable under
/// capping coordinates at `bound` (every level generator must fit in the
/// box). eval receives only nonzero vectors.
SequencePresentation presentation_from_eval(std::shared_ptr<const Lattice> l, int bound,
                                            const std::function<int(const Vec&)>& eval);

} // namespace latseq
