#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "latseq/lattice.hpp"
#include "latseq/sequence.hpp"

namespace latseq {

struct SearchOptions {
    /// Nodes = candidate values tried. Exceeding the budget raises
    /// SearchBudgetExceeded; partial results are never returned.
    long long node_budget = 0;

    /// Budget from the LATSEQ_BUDGET environment variable, or 200M.
    static SearchOptions defaults();
};

/// Outcome of deciding how many admissible sequences a lattice carries.
struct Classification {
    enum class Verdict { Finite, Infinite };

    Verdict verdict = Verdict::Finite;
    std::string method;                           // "decomposition" or "oracle"
    std::shared_ptr<const Lattice> lattice;
    std::vector<SequencePresentation> sequences;  // Finite: canonically sorted
    std::optional<SplittingPair> pair;            // Infinite: a strong pair
    std::optional<int> cap;                       // oracle method only

    /// Lazy member of the ascending infinite family (Infinite verdicts).
    SequencePresentation family_member(int k) const;
};

/// Strong splitting pair present: Infinite with that pair. Otherwise the
/// lattice must be modular (error NotModular); it then decomposes as
/// core x B2^n, the core is enumerated exhaustively, a two-element sequence
/// is attached per factor, and everything is transported back. Every
/// returned sequence passes the admissibility check.
Classification classify(std::shared_ptr<const Lattice> l,
                        const SearchOptions& opts = SearchOptions::defaults());

/// All admissible sequences on a lattice with no splitting pair at all
/// (error HasSplittingPair). Values are searched on the ball of totals
/// < #atoms with constraint propagation; everything larger vanishes.
std::vector<SequencePresentation> enumerate_nonsplitting(
    std::shared_ptr<const Lattice> l, const SearchOptions& opts = SearchOptions::defaults());

/// The ascending chain of admissible sequences a strong splitting pair
/// generates: member j acts as the pair sequence up to arity j and as
/// bottom beyond. Returns members 0..k. Throws NotStrong.
std::vector<SequencePresentation> infinite_family(std::shared_ptr<const Lattice> l,
                                                  const SplittingPair& pair, int k);

/// Independent ground truth: every admissible sequence whose presentation
/// has cap degree <= cap, found by direct search over E-assignments on the
/// box [0,cap]^m. Uses no decomposition or product structure.
std::vector<SequencePresentation> brute_force_oracle(
    std::shared_ptr<const Lattice> l, int cap,
    const SearchOptions& opts = SearchOptions::defaults());

/// Cap that makes the oracle complete on a modular lattice with no strong
/// splitting pair: max(#atoms of the core, 2).
int derived_oracle_cap(const Lattice& l);

struct PosetReport {
    int count = 0;
    std::vector<std::vector<uint8_t>> leq;  // leq[i][j]: seq i below seq j
    int longest_chain = 0;
    int max_antichain = 0;
    bool embedding_injective = true;
    /// Level-containment order agrees with pointwise comparison at
    /// arities <= 4 on every pair.
    bool embedding_order_reversing = true;
};

/// Order statistics of a finite batch of sequences on one lattice.
PosetReport sequence_poset(const std::vector<SequencePresentation>& seqs);

} // namespace latseq
