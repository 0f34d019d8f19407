#include "latseq/sequence.hpp"

#include <algorithm>
#include <sstream>

#include "latseq/errors.hpp"

namespace latseq {

namespace {

std::string vec_str(const Vec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    os << ")";
    return os.str();
}

Vec unit(int m, int i) {
    Vec v(m, 0);
    v[i] = 1;
    return v;
}

/// Dense value table over [0,radix-1]^m, lexicographic index order.
struct DenseBox {
    int m = 0;
    int radix = 1;
    long long volume = 0;
    std::vector<long long> weight;
    std::vector<int16_t> val;

    static std::optional<DenseBox> make(int m, int radix, long long limit) {
        long long volume = 1;
        for (int i = 0; i < m; ++i) {
            if (volume > limit / radix) return std::nullopt;
            volume *= radix;
        }
        DenseBox b;
        b.m = m;
        b.radix = radix;
        b.volume = volume;
        b.weight.assign(m, 1);
        for (int i = m - 2; i >= 0; --i) b.weight[i] = b.weight[i + 1] * radix;
        b.val.assign(volume, -1);
        return b;
    }

    long long index(const Vec& v) const {
        long long idx = 0;
        for (int i = 0; i < m; ++i) idx += weight[i] * v[i];
        return idx;
    }
};

struct AxiomState {
    AxiomCheck check;
    bool stop = false;

    explicit AxiomState(const char* name) { check.axiom = name; }
    void violate(const std::string& witness, bool early_exit) {
        if (check.passed) {
            check.passed = false;
            check.witness = witness;
        }
        ++check.violations;
        if (early_exit) stop = true;
    }
};

// Membership bitmap of an upward closed set over [0,C]^m in lexicographic
// index order: a vector is in iff it is a generator or sits one step above
// a member. All generators must fit the box.
std::vector<uint8_t> dense_membership(const UpwardClosedSet& u, const DenseBox& box) {
    std::vector<uint8_t> member(box.volume, 0);
    for (const Vec& g : u.generators()) member[box.index(g)] = 1;
    const int radix = box.radix;
    for (long long idx = 0; idx < box.volume; ++idx) {
        if (member[idx]) continue;
        for (int i = 0; i < box.m; ++i) {
            if ((idx / box.weight[i]) % radix == 0) continue;
            if (member[idx - box.weight[i]]) {
                member[idx] = 1;
                break;
            }
        }
    }
    return member;
}

// Verifies the axioms for an evaluation rule that is exactly stable under
// capping coordinates at C, quantifying over the box [0,C]^m. That is
// complete for the full domain: a +e_i step out of the box caps back to an
// in-box vector (its index moves by the coordinate weight, or stays put at
// the C boundary), sums b+c cap coordinatewise, and the only instances this
// leaves out are HC2 moves whose source coordinate exceeds C, which reduce
// to the boundary condition E(a+e_j) >= E(a) at cells with a_i = C.
AdmissibilityReport check_axioms_box(const Lattice& l, const std::function<int(const Vec&)>& eval,
                                     int C, bool early_exit) {
    const int m = l.size();
    const int bot = l.bottom();

    auto small = DenseBox::make(m, C + 1, 1LL << 24);
    if (!small)
        fail(ErrorKind::SearchBudgetExceeded,
             "verification box [0," + std::to_string(C) + "]^" + std::to_string(m) +
                 " is too large to scan");
    const long long volume = small->volume;
    const auto& w = small->weight;
    const int radix = C + 1;

    auto coord = [&](long long idx, int i) { return (int)((idx / w[i]) % radix); };
    // index of cap(vector(idx) + e_i)
    auto step_up = [&](long long idx, int i) {
        return coord(idx, i) < C ? idx + w[i] : idx;
    };
    auto decode = [&](long long idx) {
        Vec v(m);
        for (int i = 0; i < m; ++i) v[i] = coord(idx, i);
        return v;
    };

    AxiomState hc1("HC1"), hc2("HC2"), hc3("HC3"), hc4("HC4"), hc7("HC7"), hc8("HC8");

    // one lex sweep: fill the table, check HC1, and shortlist the cells
    // whose support meet is nonzero (everything else is pinned to bottom
    // once HC1 holds)
    std::vector<long long> live;
    {
        long long idx = 0;
        for_each_in_box(m, C, [&](const Vec& v) {
            if (idx == 0) {
                ++idx;
                return; // the zero vector encodes nothing
            }
            int value = eval(v);
            small->val[idx] = (int16_t)value;
            int bound = l.top();
            for (int i = 0; i < m; ++i)
                if (v[i] > 0) bound = l.meet(bound, i);
            if (bound != bot) live.push_back(idx);
            if (!l.leq(value, bound) && !hc1.stop)
                hc1.violate("a=" + vec_str(v) + ": E(a)=" + l.label(value) +
                                " is not below the support meet " + l.label(bound),
                            early_exit);
            ++idx;
        });
    }
    const bool hc1_ok = hc1.check.passed;

    // HC3: adding an argument can only shrink the value.
    for (long long idx = 1; idx < volume && !hc3.stop; ++idx) {
        const int base = small->val[idx];
        for (int i = 0; i < m && !hc3.stop; ++i) {
            int v = small->val[step_up(idx, i)];
            if (!l.leq(v, base))
                hc3.violate("a=" + vec_str(decode(idx)) + ", i=" + std::to_string(i) +
                                ": E(a+e_i)=" + l.label(v) + " is not below E(a)=" + l.label(base),
                            early_exit);
        }
    }

    // HC2: enlarging one argument enlarges the value. In-box moves compare
    // siblings directly; moves from a coordinate already at C reduce to the
    // boundary instances E(a+e_j) >= E(a).
    for (long long idx = 1; idx < volume && !hc2.stop; ++idx) {
        const int base = small->val[idx];
        for (int i = 0; i < m && !hc2.stop; ++i) {
            const int ci = coord(idx, i);
            if (ci == 0) continue;
            for (int j = 0; j < m && !hc2.stop; ++j) {
                if (j == i || !l.leq(i, j)) continue;
                const int cj = coord(idx, j);
                if (cj < C) {
                    int v = small->val[idx - w[i] + w[j]];
                    if (!l.leq(base, v))
                        hc2.violate("a=" + vec_str(decode(idx)) + ", i=" + std::to_string(i) +
                                        ", j=" + std::to_string(j) + ": E(a-e_i+e_j)=" +
                                        l.label(v) + " is not above E(a)=" + l.label(base),
                                    early_exit);
                }
                if (ci == C && cj < C) {
                    int v = small->val[idx + w[j]];
                    if (!l.leq(base, v))
                        hc2.violate("a=" + vec_str(decode(idx)) + "+e_i, i=" + std::to_string(i) +
                                        ", j=" + std::to_string(j) + ": E(a-e_i+e_j)=" +
                                        l.label(v) + " is not above E(a)=" + l.label(base),
                                    early_exit);
                }
            }
        }
    }

    // HC4 holds structurally: vectors encode argument multisets.
    hc4.check.witness = "";

    // HC7, binary join distributivity in one slot.
    for (long long idx = 0; idx < volume && !hc7.stop; ++idx) {
        for (int b = 0; b < m && !hc7.stop; ++b)
            for (int c = b + 1; c < m && !hc7.stop; ++c) {
                int lhs = small->val[step_up(idx, l.join(b, c))];
                int rhs = l.join((int)small->val[step_up(idx, b)],
                                 (int)small->val[step_up(idx, c)]);
                if (lhs != rhs)
                    hc7.violate("a=" + vec_str(decode(idx)) + ", b=" + l.label(b) + ", c=" +
                                    l.label(c) + ": E(a+e_{b v c})=" + l.label(lhs) +
                                    " but E(a+e_b) v E(a+e_c)=" + l.label(rhs),
                                early_exit);
            }
    }

    // HC8: plugging an evaluated subcall back in stays below the flat value.
    // With HC1 in hand both sides are bottom unless the subcall value and
    // the outer support meet are nonzero, so the shortlists carry the loop.
    {
        std::vector<long long> gammas;
        for (long long idx : live)
            if (small->val[idx] != bot) gammas.push_back(idx);
        const std::vector<long long>* outer = &gammas;
        std::vector<long long> all;
        if (!hc1_ok) {
            all.resize(volume - 1);
            for (long long idx = 1; idx < volume; ++idx) all[idx - 1] = idx;
            outer = &all;
        }
        const std::vector<long long>& inner_list = hc1_ok ? live : all;
        if ((long long)outer->size() * (long long)(inner_list.size() + 1) > (2LL << 30))
            fail(ErrorKind::SearchBudgetExceeded,
                 "nesting axiom needs " + std::to_string(outer->size()) + " x " +
                     std::to_string(inner_list.size()) + " instance pairs; domain too large");
        for (long long kc : *outer) {
            if (hc8.stop) break;
            const int gamma = small->val[kc];
            if (gamma == bot) continue; // follows from HC1 when it holds
            // b = 0, which no shortlist contains
            if (int lhs = small->val[w[gamma]]; lhs != bot && !l.leq(lhs, small->val[kc]))
                hc8.violate("b=" + vec_str(Vec(m, 0)) + ", c=" + vec_str(decode(kc)) +
                                ": E(b+e_{E(c)})=" + l.label(lhs) + " is not below E(b+c)=" +
                                l.label((int)small->val[kc]),
                            early_exit);
            for (long long kb : inner_list) {
                if (hc8.stop) break;
                int lhs = small->val[step_up(kb, gamma)];
                if (lhs == bot) continue;
                long long sum = 0;
                for (int i = 0; i < m; ++i)
                    sum += w[i] * std::min(coord(kb, i) + coord(kc, i), C);
                int rhs = small->val[sum];
                if (!l.leq(lhs, rhs))
                    hc8.violate("b=" + vec_str(decode(kb)) + ", c=" + vec_str(decode(kc)) +
                                    ": E(b+e_{E(c)})=" + l.label(lhs) + " is not below E(b+c)=" +
                                    l.label(rhs),
                                early_exit);
            }
        }
    }

    AdmissibilityReport report;
    report.axioms = {hc1.check, hc2.check, hc3.check, hc4.check, hc7.check, hc8.check};
    return report;
}

// Same contract for a zero-tailed table: values on the ball {|a| <= T},
// bottom beyond. Quantification over the ball is complete because every
// instance outside it has bottom on the constrained side.
AdmissibilityReport check_axioms_ball(const Lattice& l, const std::function<int(const Vec&)>& eval,
                                      int T, bool early_exit) {
    const int m = l.size();
    const int bot = l.bottom();

    auto dense = DenseBox::make(m, T + 1, 1LL << 24);
    if (!dense)
        fail(ErrorKind::SearchBudgetExceeded,
             "table ball of bound " + std::to_string(T) + " in dimension " + std::to_string(m) +
                 " is too large to scan");
    std::vector<Vec> cells; // |v| <= T, lexicographic
    for_each_in_box(m, T, [&](const Vec& v) {
        if (vec_total(v) > T) return;
        cells.push_back(v);
        if (!is_zero(v)) dense->val[dense->index(v)] = (int16_t)eval(v);
    });
    auto value = [&](const Vec& v) -> int {
        if (vec_total(v) > T) return bot;
        return dense->val[dense->index(v)];
    };

    AxiomState hc1("HC1"), hc2("HC2"), hc3("HC3"), hc4("HC4"), hc7("HC7"), hc8("HC8");

    for (const Vec& a : cells) {
        if (hc1.stop) break;
        if (is_zero(a)) continue;
        int bound = l.top();
        for (int i = 0; i < m; ++i)
            if (a[i] > 0) bound = l.meet(bound, i);
        int v = value(a);
        if (!l.leq(v, bound))
            hc1.violate("a=" + vec_str(a) + ": E(a)=" + l.label(v) +
                            " is not below the support meet " + l.label(bound),
                        early_exit);
    }

    for (const Vec& a : cells) {
        if (hc2.stop) break;
        if (is_zero(a)) continue;
        int base = value(a);
        for (int i = 0; i < m && !hc2.stop; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; j < m && !hc2.stop; ++j) {
                if (j == i || !l.leq(i, j)) continue;
                Vec moved = a;
                --moved[i];
                ++moved[j];
                int v = value(moved);
                if (!l.leq(base, v))
                    hc2.violate("a=" + vec_str(a) + ", i=" + std::to_string(i) + ", j=" +
                                    std::to_string(j) + ": E(a-e_i+e_j)=" + l.label(v) +
                                    " is not above E(a)=" + l.label(base),
                                early_exit);
            }
        }
    }

    for (const Vec& a : cells) {
        if (hc3.stop) break;
        if (is_zero(a)) continue;
        int base = value(a);
        for (int i = 0; i < m && !hc3.stop; ++i) {
            Vec up = a;
            ++up[i];
            int v = value(up);
            if (!l.leq(v, base))
                hc3.violate("a=" + vec_str(a) + ", i=" + std::to_string(i) + ": E(a+e_i)=" +
                                l.label(v) + " is not below E(a)=" + l.label(base),
                            early_exit);
        }
    }

    for (const Vec& a : cells) {
        if (hc7.stop) break;
        for (int b = 0; b < m && !hc7.stop; ++b)
            for (int c = b + 1; c < m && !hc7.stop; ++c) {
                int jn = l.join(b, c);
                Vec vb = a, vc = a, vj = a;
                ++vb[b];
                ++vc[c];
                ++vj[jn];
                int lhs = value(vj);
                int rhs = l.join(value(vb), value(vc));
                if (lhs != rhs)
                    hc7.violate("a=" + vec_str(a) + ", b=" + l.label(b) + ", c=" + l.label(c) +
                                    ": E(a+e_{b v c})=" + l.label(lhs) +
                                    " but E(a+e_b) v E(a+e_c)=" + l.label(rhs),
                                early_exit);
            }
    }

    for (const Vec& c : cells) {
        if (hc8.stop) break;
        if (is_zero(c)) continue;
        int gamma = value(c);
        for (const Vec& b : cells) {
            if (hc8.stop) break;
            Vec inner = b;
            ++inner[gamma];
            int lhs = value(inner);
            if (lhs == bot) continue;
            Vec flat = b;
            for (int i = 0; i < m; ++i) flat[i] += c[i];
            int rhs = value(flat);
            if (!l.leq(lhs, rhs))
                hc8.violate("b=" + vec_str(b) + ", c=" + vec_str(c) + ": E(b+e_{E(c)})=" +
                                l.label(lhs) + " is not below E(b+c)=" + l.label(rhs),
                            early_exit);
        }
    }
    // beyond the ball every subcall evaluates to bottom, so E(b+e_bottom)
    // has to vanish outright
    for (const Vec& b : cells) {
        if (hc8.stop) break;
        Vec inner = b;
        ++inner[bot];
        int lhs = value(inner);
        if (lhs != bot)
            hc8.violate("b=" + vec_str(b) + ", c any vector of total " + std::to_string(T + 1) +
                            ": E(b+e_{E(c)})=" + l.label(lhs) + " is not below E(b+c)=" +
                            l.label(bot),
                        early_exit);
    }

    AdmissibilityReport report;
    report.axioms = {hc1.check, hc2.check, hc3.check, hc4.check, hc7.check, hc8.check};
    return report;
}

} // namespace

const AxiomCheck& AdmissibilityReport::axiom(const std::string& name) const {
    for (const auto& a : axioms)
        if (a.axiom == name) return a;
    throw std::logic_error("no axiom named " + name);
}

SequencePresentation::SequencePresentation(std::shared_ptr<const Lattice> lattice,
                                           std::vector<UpwardClosedSet> levels)
    : lattice_(std::move(lattice)), levels_(std::move(levels)) {
    const Lattice& l = *lattice_;
    const int m = l.size();
    if ((int)levels_.size() != m)
        fail(ErrorKind::InvalidPresentation,
             "expected " + std::to_string(m) + " levels, got " + std::to_string(levels_.size()));
    for (int x = 0; x < m; ++x) {
        if (levels_[x].dim() != m)
            fail(ErrorKind::InvalidPresentation,
                 "level of \"" + l.label(x) + "\" has dimension " +
                     std::to_string(levels_[x].dim()));
        for (const Vec& g : levels_[x].generators())
            if (is_zero(g))
                fail(ErrorKind::InvalidPresentation,
                     "level of \"" + l.label(x) + "\" contains the zero vector");
    }
    for (const auto& lv : levels_) cap_ = std::max(cap_, lv.cap_degree());

    // meet compatibility: levels(x ^ y) = levels(x) n levels(y). Upward
    // closed sets with all generators inside [0,cap]^m agree everywhere as
    // soon as they agree there, so a dense pass decides the equality; the
    // generator-algebra route stays as a fallback for huge boxes.
    auto box = DenseBox::make(m, cap_ + 1, 1LL << 22);
    if (box) {
        std::vector<std::vector<uint8_t>> member(m);
        for (int x = 0; x < m; ++x) member[x] = dense_membership(levels_[x], *box);
        for (int x = 0; x < m; ++x)
            for (int y = x + 1; y < m; ++y) {
                const int mt = l.meet(x, y);
                for (long long idx = 0; idx < box->volume; ++idx)
                    if (member[mt][idx] != (member[x][idx] && member[y][idx]))
                        fail(ErrorKind::InvalidPresentation,
                             "levels of \"" + l.label(x) + "\" and \"" + l.label(y) +
                                 "\" do not intersect to the level of their meet");
            }
    } else {
        for (int x = 0; x < m; ++x)
            for (int y = x + 1; y < m; ++y)
                if (!(levels_[l.meet(x, y)] == levels_[x].intersect(levels_[y])))
                    fail(ErrorKind::InvalidPresentation,
                         "levels of \"" + l.label(x) + "\" and \"" + l.label(y) +
                             "\" do not intersect to the level of their meet");
    }
    for (int i = 0; i < m; ++i)
        if (!levels_[l.top()].contains(unit(m, i)))
            fail(ErrorKind::InvalidPresentation,
                 "top level misses the unit vector of \"" + l.label(i) + "\"");
}

int SequencePresentation::eval_vector(const Vec& v) const {
    const Lattice& l = *lattice_;
    if ((int)v.size() != l.size())
        fail(ErrorKind::DimensionMismatch, "vector has length " + std::to_string(v.size()));
    if (is_zero(v)) fail(ErrorKind::EmptyArgs, "the zero vector encodes no arguments");
    int r = l.top();
    for (int x = 0; x < l.size(); ++x)
        if (levels_[x].contains(v)) r = l.meet(r, x);
    return r;
}

int SequencePresentation::evaluate(const std::vector<int>& args) const {
    if (args.empty()) fail(ErrorKind::EmptyArgs, "evaluate needs at least one argument");
    Vec v(lattice_->size(), 0);
    for (int a : args) {
        if (a < 0 || a >= lattice_->size())
            fail(ErrorKind::BadInput, "argument index out of range");
        ++v[a];
    }
    return eval_vector(v);
}

bool SequencePresentation::operator==(const SequencePresentation& other) const {
    return lattice_->same_content(*other.lattice_) && levels_ == other.levels_;
}

bool SequencePresentation::less_than(const SequencePresentation& other) const {
    for (size_t i = 0; i < levels_.size(); ++i) {
        if (levels_[i].generators() != other.levels_[i].generators())
            return levels_[i].generators() < other.levels_[i].generators();
    }
    return false;
}

TruncatedTable::TruncatedTable(std::shared_ptr<const Lattice> lattice, int bound,
                               std::map<Vec, int> values)
    : lattice_(std::move(lattice)), bound_(bound), values_(std::move(values)) {
    const Lattice& l = *lattice_;
    const int m = l.size();
    if (bound_ < 1) fail(ErrorKind::InconsistentTable, "table bound must be at least 1");
    for (const auto& [v, val] : values_) {
        if ((int)v.size() != m)
            fail(ErrorKind::InconsistentTable, "vector " + vec_str(v) + " has the wrong length");
        if (is_zero(v)) fail(ErrorKind::InconsistentTable, "the zero vector carries no value");
        if (vec_total(v) > bound_)
            fail(ErrorKind::InconsistentTable,
                 "vector " + vec_str(v) + " exceeds the bound " + std::to_string(bound_));
        if (val < 0 || val >= m) fail(ErrorKind::InconsistentTable, "value index out of range");
        int support_meet = l.top();
        for (int i = 0; i < m; ++i)
            if (v[i] > 0) support_meet = l.meet(support_meet, i);
        if (!l.leq(val, support_meet))
            fail(ErrorKind::InconsistentTable, "value " + l.label(val) + " at " + vec_str(v) +
                                                   " exceeds the support meet " +
                                                   l.label(support_meet));
    }
    // totality on the ball
    long long expected = 0;
    {
        std::function<void(int, int)> count = [&](int i, int left) {
            if (i == m) {
                ++expected;
                return;
            }
            for (int v = 0; v <= left; ++v) count(i + 1, left - v);
        };
        count(0, bound_);
        --expected; // zero vector excluded
    }
    if ((long long)values_.size() != expected)
        fail(ErrorKind::InconsistentTable,
             "table holds " + std::to_string(values_.size()) + " entries, needs " +
                 std::to_string(expected));
}

int TruncatedTable::eval(const Vec& v) const {
    if (vec_total(v) > bound_) return lattice_->bottom();
    auto it = values_.find(v);
    if (it == values_.end())
        fail(ErrorKind::InconsistentTable, "no value stored for " + vec_str(v));
    return it->second;
}

AdmissibilityReport check_admissible(const SequencePresentation& p, bool early_exit) {
    const Lattice& l = p.lattice();
    const int m = l.size();
    const int C = p.cap_degree();
    // precompute the dense evaluation over the box in one pass per level
    auto box = DenseBox::make(m, C + 1, 1LL << 24);
    if (box) {
        std::vector<int16_t> values(box->volume, (int16_t)l.top());
        for (int x = 0; x < m; ++x) {
            std::vector<uint8_t> member = dense_membership(p.level(x), *box);
            for (long long idx = 0; idx < box->volume; ++idx)
                if (member[idx]) values[idx] = (int16_t)l.meet(values[idx], x);
        }
        return check_axioms_box(
            l, [&](const Vec& v) { return (int)values[box->index(v)]; }, C, early_exit);
    }
    return check_axioms_box(l, [&](const Vec& v) { return p.eval_vector(v); }, C, early_exit);
}

AdmissibilityReport check_admissible(const TruncatedTable& t, bool early_exit) {
    return check_axioms_ball(t.lattice(), [&](const Vec& v) { return t.eval(v); }, t.bound(),
                             early_exit);
}

AdmissibilityReport check_admissible_eval(const Lattice& l, int cap,
                                          const std::function<int(const Vec&)>& eval,
                                          bool early_exit) {
    if (cap < 1) fail(ErrorKind::BadInput, "cap must be at least 1");
    return check_axioms_box(l, eval, cap, early_exit);
}

SequencePresentation from_truncated_table(const TruncatedTable& t) {
    const Lattice& l = t.lattice();
    const int m = l.size();
    const int T = t.bound();
    // levels are upward closed only when the table is antitone
    for (const auto& [v, val] : t.values()) {
        for (int i = 0; i < m; ++i) {
            Vec up = v;
            ++up[i];
            if (vec_total(up) > T) continue;
            int upval = t.eval(up);
            if (!l.leq(upval, val))
                fail(ErrorKind::InconsistentTable,
                     "levels are not upward closed: E" + vec_str(up) + "=" + l.label(upval) +
                         " exceeds E" + vec_str(v) + "=" + l.label(val));
        }
    }
    // every vector of total T+1 evaluates to bottom, so the whole layer
    // joins every level
    std::vector<Vec> tail_layer;
    {
        Vec v(m, 0);
        std::function<void(int, int)> emit = [&](int i, int left) {
            if (i == m - 1) {
                v[i] = left;
                tail_layer.push_back(v);
                return;
            }
            for (int x = 0; x <= left; ++x) {
                v[i] = x;
                emit(i + 1, left - x);
            }
        };
        emit(0, T + 1);
    }
    std::vector<UpwardClosedSet> levels;
    levels.reserve(m);
    for (int x = 0; x < m; ++x) {
        std::vector<Vec> gens = tail_layer;
        for (const auto& [v, val] : t.values())
            if (l.leq(val, x)) gens.push_back(v);
        levels.push_back(UpwardClosedSet::from_generators(m, std::move(gens)));
    }
    return SequencePresentation(t.lattice_ptr(), std::move(levels));
}

bool leq_sequences(const SequencePresentation& p, const SequencePresentation& q) {
    if (!p.lattice().same_content(q.lattice()))
        fail(ErrorKind::LatticeMismatch, "sequences live on different lattices");
    for (int x = 0; x < p.lattice().size(); ++x)
        if (!q.level(x).subset_of(p.level(x))) return false;
    return true;
}

bool pointwise_leq(const SequencePresentation& p, const SequencePresentation& q, int max_arity) {
    if (!p.lattice().same_content(q.lattice()))
        fail(ErrorKind::LatticeMismatch, "sequences live on different lattices");
    const int m = p.lattice().size();
    for (int arity = 1; arity <= max_arity; ++arity) {
        std::vector<int> args(arity, 0);
        while (true) {
            if (!p.lattice().leq(p.evaluate(args), q.evaluate(args))) return false;
            int i = arity - 1;
            while (i >= 0 && args[i] == m - 1) args[i--] = 0;
            if (i < 0) break;
            ++args[i];
        }
    }
    return true;
}

SequencePresentation product_sequence(const SequencePresentation& p1,
                                      const SequencePresentation& p2) {
    auto prod = std::make_shared<Lattice>(product(p1.lattice(), p2.lattice()));
    const int m1 = p1.lattice().size(), m2 = p2.lattice().size();
    const int dim = m1 * m2;
    std::vector<UpwardClosedSet> levels;
    levels.reserve(dim);
    // A vector is in the product level iff its row sums land in the left
    // level and its column sums in the right one; the minimal such vectors
    // for a fixed generator pair (g, h) have entries at most max(g_i, h_j),
    // so each pair is scanned in its own tight box.
    for (int k = 0; k < dim; ++k) {
        const int a = k / m2, b = k % m2;
        std::vector<Vec> gens;
        for (const Vec& g : p1.level(a).generators())
            for (const Vec& h : p2.level(b).generators()) {
                Vec bounds(dim);
                for (int i = 0; i < m1; ++i)
                    for (int j = 0; j < m2; ++j)
                        bounds[i * m2 + j] = std::max(g[i], h[j]);
                auto part = UpwardClosedSet::from_predicate(
                    dim, bounds, [&](const Vec& w) {
                        for (int i = 0; i < m1; ++i) {
                            int row = 0;
                            for (int j = 0; j < m2; ++j) row += w[i * m2 + j];
                            if (row < g[i]) return false;
                        }
                        for (int j = 0; j < m2; ++j) {
                            int col = 0;
                            for (int i = 0; i < m1; ++i) col += w[i * m2 + j];
                            if (col < h[j]) return false;
                        }
                        return true;
                    });
                gens.insert(gens.end(), part.generators().begin(), part.generators().end());
            }
        levels.push_back(UpwardClosedSet::from_generators(dim, std::move(gens)));
    }
    return SequencePresentation(prod, std::move(levels));
}

SequencePresentation project_sequence(const SequencePresentation& p, int side) {
    const auto& info = p.lattice().product_info();
    if (!info) fail(ErrorKind::NotAProduct, "sequence does not live on a recorded product");
    if (side != 1 && side != 2) fail(ErrorKind::BadInput, "side must be 1 or 2");
    auto factor = side == 1 ? info->left : info->right;
    const int mf = factor->size();
    const int other_bottom = (side == 1 ? info->right : info->left)->bottom();
    const int C = p.cap_degree();
    std::vector<UpwardClosedSet> levels;
    levels.reserve(mf);
    Vec embedded(p.lattice().size());
    for (int x = 0; x < mf; ++x) {
        const int target = side == 1 ? p.lattice().product_index(x, other_bottom)
                                     : p.lattice().product_index(other_bottom, x);
        const UpwardClosedSet& lvl = p.level(target);
        levels.push_back(UpwardClosedSet::from_predicate(mf, C, [&](const Vec& w) {
            if (is_zero(w)) return false;
            std::fill(embedded.begin(), embedded.end(), 0);
            for (int i = 0; i < mf; ++i) {
                int k = side == 1 ? p.lattice().product_index(i, other_bottom)
                                  : p.lattice().product_index(other_bottom, i);
                embedded[k] = w[i];
            }
            return lvl.contains(embedded);
        }));
    }
    return SequencePresentation(factor, std::move(levels));
}

SequencePresentation transport_sequence(const SequencePresentation& p,
                                        std::shared_ptr<const Lattice> target,
                                        const std::vector<int>& to_source) {
    const int m = p.lattice().size();
    if (target->size() != m || (int)to_source.size() != m)
        fail(ErrorKind::LatticeMismatch, "transport needs lattices of equal size");
    std::vector<char> seen(m, 0);
    for (int i : to_source) {
        if (i < 0 || i >= m || seen[i])
            fail(ErrorKind::LatticeMismatch, "transport map is not a bijection");
        seen[i] = 1;
    }
    std::vector<UpwardClosedSet> levels;
    levels.reserve(m);
    for (int x = 0; x < m; ++x) {
        std::vector<Vec> gens;
        for (const Vec& g : p.level(to_source[x]).generators()) {
            Vec moved(m);
            for (int i = 0; i < m; ++i) moved[i] = g[to_source[i]];
            gens.push_back(std::move(moved));
        }
        levels.push_back(UpwardClosedSet::from_generators(m, std::move(gens)));
    }
    return SequencePresentation(std::move(target), std::move(levels));
}

CentralSeries lower_central_series(const SequencePresentation& p) {
    const Lattice& l = p.lattice();
    CentralSeries s;
    int cur = l.top();
    s.terms.push_back(cur);
    if (cur == l.bottom()) {
        s.nilpotent = true;
        s.nilpotency_class = 0;
        return s;
    }
    for (int step = 0; step <= l.size() + 1; ++step) {
        int next = p.evaluate({l.top(), cur});
        if (next == cur) {
            s.nilpotent = false;
            return s;
        }
        s.terms.push_back(next);
        if (next == l.bottom()) {
            s.nilpotent = true;
            s.nilpotency_class = (int)s.terms.size() - 1;
            return s;
        }
        cur = next;
    }
    throw std::logic_error("lower central series failed to stabilize");
}

std::optional<int> vanishing_arity(const SequencePresentation& p) {
    const Lattice& l = p.lattice();
    const int C = p.cap_degree();
    Vec v(l.size(), 0);
    for (int n = 1; n <= C; ++n) {
        v[l.top()] = n;
        if (p.eval_vector(v) == l.bottom()) return n;
    }
    // capped at C, so the values repeat from here on
    return std::nullopt;
}

std::vector<SequencePresentation> b2_sequences(std::shared_ptr<const Lattice> b2) {
    const Lattice& l = *b2;
    if (l.size() != 2) fail(ErrorKind::BadInput, "expected a two-element lattice");
    const int bot = l.bottom(), top = l.top();
    Vec eb = unit(2, bot), et = unit(2, top);
    Vec et2 = et;
    et2[top] = 2;
    auto gens = [&](std::vector<Vec> g) { return UpwardClosedSet::from_generators(2, std::move(g)); };
    auto levels_of = [&](UpwardClosedSet at_bottom, UpwardClosedSet at_top) {
        std::vector<UpwardClosedSet> lv(2, at_bottom);
        lv[bot] = std::move(at_bottom);
        lv[top] = std::move(at_top);
        return lv;
    };
    std::vector<SequencePresentation> out;
    out.emplace_back(b2, levels_of(gens({eb, et}), gens({eb, et})));   // constant bottom
    out.emplace_back(b2, levels_of(gens({eb, et2}), gens({eb, et}))); // identity, then bottom
    out.emplace_back(b2, levels_of(gens({eb}), gens({eb, et})));      // meet
    return out;
}

SequencePresentation strong_pair_sequence(std::shared_ptr<const Lattice> l,
                                          const SplittingPair& pair) {
    const Lattice& lat = *l;
    if (!is_splitting_pair(lat, pair.delta, pair.epsilon) || !lat.leq(pair.epsilon, pair.delta))
        fail(ErrorKind::NotStrong, "(\"" + lat.label(pair.delta) + "\", \"" +
                                       lat.label(pair.epsilon) + "\") is not a strong splitting pair");
    const int m = lat.size();
    auto eval = [&lat, pair, m](const Vec& v) -> int {
        int total = 0, single = -1;
        for (int i = 0; i < m; ++i) {
            total += v[i];
            if (v[i] > 0) single = i;
        }
        if (total == 1) return single;
        for (int i = 0; i < m; ++i)
            if (v[i] > 0 && lat.leq(i, pair.delta)) return lat.bottom();
        return pair.epsilon;
    };
    return presentation_from_eval(std::move(l), 2, eval);
}

SequencePresentation presentation_from_eval(std::shared_ptr<const Lattice> l, int bound,
                                            const std::function<int(const Vec&)>& eval) {
    const Lattice& lat = *l;
    const int m = lat.size();
    std::vector<UpwardClosedSet> levels;
    levels.reserve(m);
    for (int x = 0; x < m; ++x)
        levels.push_back(UpwardClosedSet::from_predicate(m, bound, [&](const Vec& v) {
            return !is_zero(v) && lat.leq(eval(v), x);
        }));
    return SequencePresentation(std::move(l), std::move(levels));
}

} // namespace latseq
