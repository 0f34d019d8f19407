#include "latseq/enumerate.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "latseq/errors.hpp"

namespace latseq {

namespace {

// Backtracking over E-assignments, cheapest constraints first. Two domains:
//   box:  all nonzero vectors in [0,bound]^m, values extended by capping
//   ball: all nonzero vectors of total <= bound, values extended by bottom
// HC1 caps the candidate set, HC3 and HC2 prune against assigned neighbours,
// and the join/nesting axioms run incrementally whenever a total-level
// completes, so a full recheck of accepted assignments is never needed.
class AssignmentSearch {
public:
    enum class Mode { box, ball };

    AssignmentSearch(const Lattice& l, Mode mode, int bound, long long budget)
        : l_(l), mode_(mode), bound_(bound), budget_(budget), m_(l.size()) {
        long long volume = 1;
        for (int i = 0; i < m_; ++i) {
            if (volume > (1LL << 18) / (bound_ + 1))
                fail(ErrorKind::SearchBudgetExceeded,
                     "assignment domain [0," + std::to_string(bound_) + "]^" +
                         std::to_string(m_) + " is too large to search");
            volume *= bound_ + 1;
        }
        weight_.assign(m_, 1);
        for (int i = m_ - 2; i >= 0; --i) weight_[i] = weight_[i + 1] * (bound_ + 1);
        values_.assign(volume, -1);

        for_each_in_box(m_, bound_, [&](const Vec& v) {
            if (is_zero(v)) return;
            if (mode_ == Mode::ball && vec_total(v) > bound_) return;
            cells_.push_back(v);
        });
        std::stable_sort(cells_.begin(), cells_.end(), [](const Vec& a, const Vec& b) {
            return vec_total(a) < vec_total(b);
        });
        max_total_ = vec_total(cells_.back());
        by_total_.assign(max_total_ + 1, {});
        index_.resize(cells_.size());
        support_meet_.resize(cells_.size());
        preds_.resize(cells_.size());
        ge_siblings_.resize(cells_.size());
        le_siblings_.resize(cells_.size());
        for (size_t k = 0; k < cells_.size(); ++k) {
            const Vec& a = cells_[k];
            index_[k] = flat(a);
            by_total_[vec_total(a)].push_back((int)k);
            int bound_el = l_.top();
            for (int i = 0; i < m_; ++i)
                if (a[i] > 0) bound_el = l_.meet(bound_el, i);
            support_meet_[k] = bound_el;
            if (vec_total(a) >= 2)
                for (int i = 0; i < m_; ++i)
                    if (a[i] > 0) preds_[k].push_back(index_[k] - weight_[i]);
            for (int i = 0; i < m_; ++i) {
                if (a[i] == 0) continue;
                for (int j = 0; j < m_; ++j) {
                    if (j == i) continue;
                    if (a[j] + 1 > bound_) continue; // reduces to an HC3 bound
                    long long sib = index_[k] - weight_[i] + weight_[j];
                    // value at a-e_i+e_j must dominate ours when el_i <= el_j,
                    // and sit below ours when el_j <= el_i
                    if (l_.leq(i, j)) ge_siblings_[k].push_back(sib);
                    if (l_.leq(j, i)) le_siblings_[k].push_back(sib);
                }
            }
        }

        order_.resize(m_);
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(),
                         [&](int a, int b) { return l_.height(a) < l_.height(b); });
    }

    long long nodes() const { return nodes_; }

    void run(const std::function<void(const std::function<int(const Vec&)>&)>& sink) {
        sink_ = &sink;
        search();
        sink_ = nullptr;
    }

private:
    long long flat(const Vec& v) const {
        long long idx = 0;
        for (int i = 0; i < m_; ++i) idx += weight_[i] * v[i];
        return idx;
    }

    // value of an arbitrary nonzero vector under the domain's tail policy
    int eval(const Vec& v) const {
        if (mode_ == Mode::ball) {
            if (vec_total(v) > bound_) return l_.bottom();
            return (int)values_[flat(v)];
        }
        long long idx = 0;
        for (int i = 0; i < m_; ++i) idx += weight_[i] * std::min(v[i], bound_);
        return (int)values_[idx];
    }

    bool hc7_at_base(const Vec& a) const {
        for (int b = 0; b < m_; ++b)
            for (int c = b + 1; c < m_; ++c) {
                Vec vb = a, vc = a, vj = a;
                ++vb[b];
                ++vc[c];
                ++vj[l_.join(b, c)];
                if (eval(vj) != l_.join(eval(vb), eval(vc))) return false;
            }
        return true;
    }

    // gamma is the already-assigned value of c
    bool hc8_pair(const Vec& b, const Vec& c, int gamma) const {
        Vec inner = b;
        ++inner[gamma];
        int lhs = eval(inner);
        if (lhs == l_.bottom()) return true;
        Vec flat_args = b;
        for (int i = 0; i < m_; ++i) flat_args[i] += c[i];
        return l_.leq(lhs, eval(flat_args));
    }

    // everything of total <= s is assigned; checks instances that need it
    bool level_complete(int s) const {
        const Vec zero(m_, 0);
        if (s == 1 && !hc7_at_base(zero)) return false;
        for (int id : by_total_[s - 1])
            if (!hc7_at_base(cells_[id])) return false;
        for (int tc = 1; tc <= s; ++tc) {
            const int tb = s - tc;
            for (int ic : by_total_[tc]) {
                const int gamma = values_[index_[ic]];
                if (gamma == l_.bottom()) continue; // HC1 already forces these
                if (tb == 0 && !hc8_pair(zero, cells_[ic], gamma)) return false;
                if (tb > 0)
                    for (int ib : by_total_[tb])
                        if (!hc8_pair(cells_[ib], cells_[ic], gamma)) return false;
            }
        }
        return true;
    }

    bool finish_checks() const {
        // join instances at the far corner reduce to identities by capping
        // in box mode and to bottoms in ball mode, except the partial layers
        for (int id : by_total_[max_total_])
            if (!hc7_at_base(cells_[id])) return false;
        // nesting instances whose flat total never completed a level
        for (size_t ic = 0; ic < cells_.size(); ++ic) {
            const int gamma = values_[index_[ic]];
            if (gamma == l_.bottom()) continue;
            int tc = vec_total(cells_[ic]);
            for (size_t ib = 0; ib < cells_.size(); ++ib) {
                if (vec_total(cells_[ib]) + tc <= max_total_) continue;
                if (!hc8_pair(cells_[ib], cells_[ic], gamma)) return false;
            }
        }
        if (mode_ == Mode::box) {
            // monotonicity moves whose source coordinate exceeds the box cap
            // to the boundary form E(a+e_j) >= E(a) at cells with a_i = cap
            for (size_t k = 0; k < cells_.size(); ++k) {
                const Vec& a = cells_[k];
                const int base = values_[index_[k]];
                for (int i = 0; i < m_; ++i) {
                    if (a[i] != bound_) continue;
                    for (int j = 0; j < m_; ++j) {
                        if (j == i || !l_.leq(i, j) || a[j] == bound_) continue;
                        if (!l_.leq(base, values_[index_[k] + weight_[j]])) return false;
                    }
                }
            }
        }
        return true;
    }

    bool feasible(size_t k, int v) const {
        if (!l_.leq(v, support_meet_[k])) return false;
        for (long long p : preds_[k])
            if (!l_.leq(v, values_[p])) return false;
        for (long long s : ge_siblings_[k]) {
            int sv = values_[s];
            if (sv >= 0 && !l_.leq(v, sv)) return false;
        }
        for (long long s : le_siblings_[k]) {
            int sv = values_[s];
            if (sv >= 0 && !l_.leq(sv, v)) return false;
        }
        return true;
    }

    // iterative backtracking; recursion depth would be the cell count
    void search() {
        const size_t n = cells_.size();
        std::vector<size_t> next(n, 0); // candidate position per depth
        size_t k = 0;
        while (true) {
            if (k == n) {
                if (finish_checks()) (*sink_)([this](const Vec& v) { return eval(v); });
                if (k == 0) return;
                --k;
                values_[index_[k]] = -1;
                continue;
            }
            const bool closes_level = k + 1 == n || vec_total(cells_[k + 1]) > vec_total(cells_[k]);
            bool advanced = false;
            while (next[k] < order_.size()) {
                const int v = order_[next[k]++];
                if (++nodes_ > budget_)
                    fail(ErrorKind::SearchBudgetExceeded,
                         "node budget " + std::to_string(budget_) + " exhausted");
                if (!feasible(k, v)) continue;
                values_[index_[k]] = (int16_t)v;
                if (closes_level && !level_complete(vec_total(cells_[k]))) {
                    values_[index_[k]] = -1;
                    continue;
                }
                ++k;
                if (k < n) next[k] = 0;
                advanced = true;
                break;
            }
            if (advanced) continue;
            next[k] = 0;
            if (k == 0) return;
            --k;
            values_[index_[k]] = -1;
        }
    }

    const Lattice& l_;
    Mode mode_;
    int bound_;
    long long budget_;
    int m_;
    int max_total_ = 0;
    std::vector<long long> weight_;
    std::vector<int16_t> values_;
    std::vector<Vec> cells_;
    std::vector<long long> index_;
    std::vector<int> support_meet_;
    std::vector<std::vector<long long>> preds_;
    std::vector<std::vector<long long>> ge_siblings_, le_siblings_;
    std::vector<std::vector<int>> by_total_;
    std::vector<int> order_;
    long long nodes_ = 0;
    const std::function<void(const std::function<int(const Vec&)>&)>* sink_ = nullptr;
};

} // namespace

SearchOptions SearchOptions::defaults() {
    SearchOptions o;
    o.node_budget = 200'000'000LL;
    if (const char* env = std::getenv("LATSEQ_BUDGET")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end && *end == '\0' && v > 0) o.node_budget = v;
    }
    return o;
}

SequencePresentation Classification::family_member(int k) const {
    if (verdict != Verdict::Infinite || !pair)
        fail(ErrorKind::BadInput, "family members exist only for infinite classifications");
    return infinite_family(lattice, *pair, k).back();
}

std::vector<SequencePresentation> enumerate_nonsplitting(std::shared_ptr<const Lattice> l,
                                                         const SearchOptions& opts) {
    const Lattice& lat = *l;
    if (lat.size() == 1) {
        std::vector<SequencePresentation> out;
        out.push_back(
            presentation_from_eval(l, 1, [&](const Vec&) { return lat.bottom(); }));
        return out;
    }
    auto pairs = splitting_pairs(lat);
    if (!pairs.empty())
        fail(ErrorKind::HasSplittingPair,
             "lattice splits via (\"" + lat.label(pairs.front().delta) + "\", \"" +
                 lat.label(pairs.front().epsilon) + "\")");
    const int n_atoms = (int)atoms(lat).size();
    const int T = n_atoms - 1;

    AssignmentSearch search(lat, AssignmentSearch::Mode::ball, T, opts.node_budget);
    std::vector<SequencePresentation> out;
    search.run([&](const std::function<int(const Vec&)>& eval) {
        std::map<Vec, int> values;
        Vec v(lat.size(), 0);
        std::function<void(int, int)> emit = [&](int i, int left) {
            if (i == lat.size()) {
                if (!is_zero(v)) values[v] = eval(v);
                return;
            }
            for (int x = 0; x <= left; ++x) {
                v[i] = x;
                emit(i + 1, left - x);
            }
            v[i] = 0;
        };
        emit(0, T);
        out.push_back(from_truncated_table(TruncatedTable(l, T, std::move(values))));
    });
    return out;
}

std::vector<SequencePresentation> brute_force_oracle(std::shared_ptr<const Lattice> l, int cap,
                                                     const SearchOptions& opts) {
    if (cap < 1) fail(ErrorKind::BadInput, "oracle cap must be at least 1");
    const Lattice& lat = *l;
    AssignmentSearch search(lat, AssignmentSearch::Mode::box, cap, opts.node_budget);
    std::vector<SequencePresentation> out;
    search.run([&](const std::function<int(const Vec&)>& eval) {
        out.push_back(presentation_from_eval(l, cap, eval));
    });
    return out;
}

int derived_oracle_cap(const Lattice& l) {
    Decomposition d = decompose(l);
    int n_atoms = d.core->size() >= 2 ? (int)atoms(*d.core).size() : 0;
    return std::max(n_atoms, 2);
}

std::vector<SequencePresentation> infinite_family(std::shared_ptr<const Lattice> l,
                                                  const SplittingPair& pair, int k) {
    const Lattice& lat = *l;
    if (!is_splitting_pair(lat, pair.delta, pair.epsilon) || !lat.leq(pair.epsilon, pair.delta))
        fail(ErrorKind::NotStrong, "(\"" + lat.label(pair.delta) + "\", \"" +
                                       lat.label(pair.epsilon) +
                                       "\") is not a strong splitting pair");
    if (k < 0) fail(ErrorKind::BadInput, "family index must be nonnegative");
    std::vector<SequencePresentation> out;
    out.reserve(k + 1);
    for (int j = 0; j <= k; ++j) {
        auto eval = [&lat, pair, j](const Vec& v) -> int {
            int total = 0, single = -1;
            for (size_t i = 0; i < v.size(); ++i) {
                total += v[i];
                if (v[i] > 0) single = (int)i;
            }
            if (total > j) return lat.bottom();
            if (total == 1) return single;
            for (size_t i = 0; i < v.size(); ++i)
                if (v[i] > 0 && lat.leq((int)i, pair.delta)) return lat.bottom();
            return pair.epsilon;
        };
        out.push_back(presentation_from_eval(l, std::max(j + 1, 1), eval));
    }
    return out;
}

Classification classify(std::shared_ptr<const Lattice> l, const SearchOptions& opts) {
    const Lattice& lat = *l;
    Classification result;
    result.lattice = l;
    result.method = "decomposition";

    if (lat.size() > 1) {
        if (auto strong = splits_strongly(lat)) {
            result.verdict = Classification::Verdict::Infinite;
            result.pair = strong;
            return result;
        }
    }
    if (auto w = modularity_counterexample(lat))
        fail(ErrorKind::NotModular, "modular law fails at (\"" + lat.label(w->x) + "\", \"" +
                                        lat.label(w->y) + "\", \"" + lat.label(w->z) +
                                        "\"); only the oracle applies, relative to a cap");

    Decomposition d = decompose(lat);
    std::vector<SequencePresentation> combos = enumerate_nonsplitting(d.core, opts);
    auto b2 = std::make_shared<const Lattice>(catalog("B2"));
    std::vector<SequencePresentation> factor_seqs = b2_sequences(b2);
    for (int step = 0; step < d.b2_power; ++step) {
        std::vector<SequencePresentation> next;
        next.reserve(combos.size() * factor_seqs.size());
        for (const SequencePresentation& c : combos)
            for (const SequencePresentation& t : factor_seqs)
                next.push_back(product_sequence(c, t));
        combos = std::move(next);
    }

    // fold index of each source element: start at the core and append bits
    std::vector<int> to_source(lat.size());
    for (int x = 0; x < lat.size(); ++x) {
        int idx = d.iso[x].first;
        for (int bit : d.iso[x].second) idx = idx * 2 + bit;
        to_source[x] = idx;
    }
    std::vector<SequencePresentation> transported;
    transported.reserve(combos.size());
    for (const SequencePresentation& c : combos)
        transported.push_back(transport_sequence(c, l, to_source));

    for (const SequencePresentation& s : transported)
        if (!check_admissible(s, /*early_exit=*/true).admissible())
            throw std::logic_error("classify produced an inadmissible sequence");

    std::sort(transported.begin(), transported.end(),
              [](const SequencePresentation& a, const SequencePresentation& b) {
                  return a.less_than(b);
              });
    for (size_t i = 1; i < transported.size(); ++i)
        if (transported[i] == transported[i - 1])
            throw std::logic_error("componentwise enumeration produced duplicates");

    result.verdict = Classification::Verdict::Finite;
    result.sequences = std::move(transported);
    return result;
}

PosetReport sequence_poset(const std::vector<SequencePresentation>& seqs) {
    const int n = (int)seqs.size();
    PosetReport r;
    r.count = n;
    if (n == 0) return r;
    for (int i = 1; i < n; ++i)
        if (!seqs[i].lattice().same_content(seqs[0].lattice()))
            fail(ErrorKind::LatticeMismatch, "sequences live on different lattices");

    r.leq.assign(n, std::vector<uint8_t>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.leq[i][j] = leq_sequences(seqs[i], seqs[j]);

    for (int i = 0; i < n && r.embedding_injective; ++i)
        for (int j = i + 1; j < n && r.embedding_injective; ++j)
            if (seqs[i] == seqs[j]) r.embedding_injective = false;

    for (int i = 0; i < n && r.embedding_order_reversing; ++i)
        for (int j = 0; j < n && r.embedding_order_reversing; ++j)
            if ((bool)r.leq[i][j] != pointwise_leq(seqs[i], seqs[j], 4))
                r.embedding_order_reversing = false;

    auto strictly = [&](int i, int j) { return r.leq[i][j] && !r.leq[j][i]; };

    std::vector<int> longest(n, -1);
    std::function<int(int)> chain_from = [&](int i) -> int {
        if (longest[i] >= 0) return longest[i];
        int best = 1;
        for (int j = 0; j < n; ++j)
            if (strictly(i, j)) best = std::max(best, 1 + chain_from(j));
        return longest[i] = best;
    };
    for (int i = 0; i < n; ++i) r.longest_chain = std::max(r.longest_chain, chain_from(i));

    // Dilworth via bipartite matching on the strict order: the minimum
    // number of chains covering the poset is n - matching, and a maximum
    // antichain has exactly that size.
    std::vector<int> match_right(n, -1);
    std::function<bool(int, std::vector<char>&)> augment = [&](int i, std::vector<char>& seen) {
        for (int j = 0; j < n; ++j) {
            if (!strictly(i, j) || seen[j]) continue;
            seen[j] = 1;
            if (match_right[j] < 0 || augment(match_right[j], seen)) {
                match_right[j] = i;
                return true;
            }
        }
        return false;
    };
    int matching = 0;
    for (int i = 0; i < n; ++i) {
        std::vector<char> seen(n, 0);
        if (augment(i, seen)) ++matching;
    }
    r.max_antichain = n - matching;
    return r;
}

} // namespace latseq
