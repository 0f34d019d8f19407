#include "latseq/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "latseq/errors.hpp"

namespace latseq {

namespace {

std::string pair_label(const std::string& a, const std::string& b) {
    return "(" + a + "," + b + ")";
}

} // namespace

int Lattice::index_of(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
}

int Lattice::require_index(const std::string& id) const {
    int i = index_of(id);
    if (i < 0) fail(ErrorKind::UnknownName, "unknown element \"" + id + "\"");
    return i;
}

Lattice Lattice::build(std::vector<std::string> elements,
                       const std::vector<std::pair<std::string, std::string>>& order_pairs) {
    if (elements.empty()) fail(ErrorKind::BadInput, "element list is empty");
    const int m = (int)elements.size();
    std::unordered_map<std::string, int> index;
    for (int i = 0; i < m; ++i) {
        if (!index.emplace(elements[i], i).second)
            fail(ErrorKind::BadInput, "duplicate element \"" + elements[i] + "\"");
    }

    std::vector<uint8_t> leq((size_t)m * m, 0);
    for (int i = 0; i < m; ++i) leq[(size_t)i * m + i] = 1;
    for (const auto& [a, b] : order_pairs) {
        auto ia = index.find(a), ib = index.find(b);
        if (ia == index.end()) fail(ErrorKind::UnknownName, "unknown element \"" + a + "\"");
        if (ib == index.end()) fail(ErrorKind::UnknownName, "unknown element \"" + b + "\"");
        leq[(size_t)ia->second * m + ib->second] = 1;
    }
    // reflexive-transitive closure
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i) {
            if (!leq[(size_t)i * m + k]) continue;
            for (int j = 0; j < m; ++j)
                if (leq[(size_t)k * m + j]) leq[(size_t)i * m + j] = 1;
        }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (leq[(size_t)i * m + j] && leq[(size_t)j * m + i])
                fail(ErrorKind::NotAPoset, "antisymmetry fails: \"" + elements[i] + "\" <= \"" +
                                               elements[j] + "\" and back");

    return from_closed_leq(std::move(elements), std::move(leq));
}

Lattice Lattice::from_closed_leq(std::vector<std::string> elements, std::vector<uint8_t> leq) {
    Lattice l;
    l.m_ = (int)elements.size();
    l.elems_ = std::move(elements);
    for (int i = 0; i < l.m_; ++i) l.index_.emplace(l.elems_[i], i);
    l.leq_ = std::move(leq);
    l.compute_tables();
    return l;
}

void Lattice::compute_tables() {
    const int m = m_;
    meet_.assign((size_t)m * m, -1);
    join_.assign((size_t)m * m, -1);
    std::vector<int> bounds;
    bounds.reserve(m);
    for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) {
            // greatest lower bound: the unique maximal common lower bound
            bounds.clear();
            for (int x = 0; x < m; ++x)
                if (leq(x, a) && leq(x, b)) bounds.push_back(x);
            int glb = -1;
            for (int x : bounds) {
                bool maximal = true;
                for (int y : bounds)
                    if (y != x && leq(x, y)) { maximal = false; break; }
                if (maximal) {
                    if (glb != -1) { glb = -2; break; }
                    glb = x;
                }
            }
            if (glb < 0)
                fail(ErrorKind::NotALattice, "no meet for (\"" + elems_[a] + "\", \"" +
                                                 elems_[b] + "\")");
            meet_[(size_t)a * m + b] = meet_[(size_t)b * m + a] = glb;

            bounds.clear();
            for (int x = 0; x < m; ++x)
                if (leq(a, x) && leq(b, x)) bounds.push_back(x);
            int lub = -1;
            for (int x : bounds) {
                bool minimal = true;
                for (int y : bounds)
                    if (y != x && leq(y, x)) { minimal = false; break; }
                if (minimal) {
                    if (lub != -1) { lub = -2; break; }
                    lub = x;
                }
            }
            if (lub < 0)
                fail(ErrorKind::NotALattice, "no join for (\"" + elems_[a] + "\", \"" +
                                                 elems_[b] + "\")");
            join_[(size_t)a * m + b] = join_[(size_t)b * m + a] = lub;
        }

    bottom_ = 0;
    top_ = 0;
    for (int x = 1; x < m; ++x) {
        bottom_ = meet(bottom_, x);
        top_ = join(top_, x);
    }

    height_.assign(m, 0);
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int ca = 0, cb = 0;
        for (int x = 0; x < m; ++x) {
            ca += leq(x, a);
            cb += leq(x, b);
        }
        return ca < cb;
    });
    for (int x : order)
        for (int y = 0; y < m; ++y)
            if (y != x && leq(y, x)) height_[x] = std::max(height_[x], height_[y] + 1);
}

bool Lattice::covers(int a, int b) const {
    if (a == b || !leq(a, b)) return false;
    for (int c = 0; c < m_; ++c)
        if (c != a && c != b && leq(a, c) && leq(c, b)) return false;
    return true;
}

std::vector<int> Lattice::lower_covers(int a) const {
    std::vector<int> r;
    for (int c = 0; c < m_; ++c)
        if (covers(c, a)) r.push_back(c);
    return r;
}

std::vector<int> Lattice::upper_covers(int a) const {
    std::vector<int> r;
    for (int c = 0; c < m_; ++c)
        if (covers(a, c)) r.push_back(c);
    return r;
}

bool Lattice::same_content(const Lattice& other) const {
    return elems_ == other.elems_ && leq_ == other.leq_;
}

int Lattice::product_index(int i, int j) const {
    if (!product_) fail(ErrorKind::NotAProduct, "lattice is not a recorded product");
    return i * product_->right->size() + j;
}

std::pair<int, int> Lattice::factor_indices(int k) const {
    if (!product_) fail(ErrorKind::NotAProduct, "lattice is not a recorded product");
    int n2 = product_->right->size();
    return {k / n2, k % n2};
}

std::optional<ModularityWitness> modularity_counterexample(const Lattice& l) {
    const int m = l.size();
    for (int x = 0; x < m; ++x)
        for (int z = 0; z < m; ++z) {
            if (!l.leq(x, z)) continue;
            for (int y = 0; y < m; ++y)
                if (l.join(x, l.meet(y, z)) != l.meet(l.join(x, y), z))
                    return ModularityWitness{x, y, z};
        }
    return std::nullopt;
}

bool is_modular(const Lattice& l) { return !modularity_counterexample(l).has_value(); }

std::vector<int> atoms(const Lattice& l) {
    if (l.size() < 2) fail(ErrorKind::TrivialLattice, "atoms need at least two elements");
    return l.upper_covers(l.bottom());
}

std::vector<int> coatoms(const Lattice& l) {
    if (l.size() < 2) fail(ErrorKind::TrivialLattice, "coatoms need at least two elements");
    return l.lower_covers(l.top());
}

bool is_splitting_pair(const Lattice& l, int delta, int epsilon) {
    if (delta == l.top() || epsilon == l.bottom()) return false;
    for (int x = 0; x < l.size(); ++x)
        if (!l.leq(epsilon, x) && !l.leq(x, delta)) return false;
    return true;
}

namespace {

std::vector<SplittingPair> splitting_pairs_unchecked(const Lattice& l) {
    std::vector<SplittingPair> pairs;
    for (int d = 0; d < l.size(); ++d) {
        if (d == l.top()) continue;
        for (int e = 0; e < l.size(); ++e) {
            if (e == l.bottom()) continue;
            if (is_splitting_pair(l, d, e))
                pairs.push_back(SplittingPair{d, e, l.leq(e, d)});
        }
    }
    return pairs;
}

} // namespace

std::vector<SplittingPair> splitting_pairs(const Lattice& l) {
    if (l.size() == 1)
        fail(ErrorKind::TrivialLattice, "splitting needs delta < top, impossible when 0 = 1");
    return splitting_pairs_unchecked(l);
}

std::optional<SplittingPair> splits_strongly(const Lattice& l) {
    if (l.size() == 1)
        fail(ErrorKind::TrivialLattice, "splitting needs delta < top, impossible when 0 = 1");
    for (const SplittingPair& p : splitting_pairs_unchecked(l))
        if (p.strong) return p;
    return std::nullopt;
}

Lattice interval(const Lattice& l, int a, int b) {
    if (!l.leq(a, b))
        fail(ErrorKind::NotComparable, "\"" + l.label(a) + "\" is not below \"" + l.label(b) + "\"");
    std::vector<int> members;
    for (int x = 0; x < l.size(); ++x)
        if (l.leq(a, x) && l.leq(x, b)) members.push_back(x);
    const int n = (int)members.size();
    std::vector<std::string> elems(n);
    std::vector<uint8_t> leq((size_t)n * n, 0);
    for (int i = 0; i < n; ++i) {
        elems[i] = l.label(members[i]);
        for (int j = 0; j < n; ++j) leq[(size_t)i * n + j] = l.leq(members[i], members[j]);
    }
    return Lattice::from_closed_leq(std::move(elems), std::move(leq));
}

Lattice product(const Lattice& l1, const Lattice& l2) {
    const int n1 = l1.size(), n2 = l2.size();
    const int n = n1 * n2;
    std::vector<std::string> elems(n);
    std::vector<uint8_t> leq((size_t)n * n, 0);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            elems[i * n2 + j] = pair_label(l1.label(i), l2.label(j));
            for (int p = 0; p < n1; ++p)
                for (int q = 0; q < n2; ++q)
                    leq[(size_t)(i * n2 + j) * n + (p * n2 + q)] = l1.leq(i, p) && l2.leq(j, q);
        }
    Lattice prod = Lattice::from_closed_leq(std::move(elems), std::move(leq));
    prod.product_ = Lattice::ProductInfo{std::make_shared<Lattice>(l1),
                                         std::make_shared<Lattice>(l2)};
    return prod;
}

namespace {

struct IsoSignature {
    int height, nlower, nupper;
    bool operator==(const IsoSignature&) const = default;
};

IsoSignature signature(const Lattice& l, int x) {
    return {l.height(x), (int)l.lower_covers(x).size(), (int)l.upper_covers(x).size()};
}

bool extend_iso(const Lattice& l1, const Lattice& l2, const std::vector<IsoSignature>& sig1,
                const std::vector<IsoSignature>& sig2, std::vector<int>& map,
                std::vector<char>& used, int next) {
    const int m = l1.size();
    if (next == m) return true;
    for (int cand = 0; cand < m; ++cand) {
        if (used[cand] || !(sig1[next] == sig2[cand])) continue;
        bool ok = true;
        for (int prev = 0; prev < next && ok; ++prev) {
            if (l1.leq(prev, next) != l2.leq(map[prev], cand)) ok = false;
            if (ok && l1.leq(next, prev) != l2.leq(cand, map[prev])) ok = false;
            if (ok) {
                int mt = l1.meet(prev, next), jn = l1.join(prev, next);
                if (mt < next && map[mt] != -1 && l2.meet(map[prev], cand) != map[mt]) ok = false;
                if (ok && jn < next && map[jn] != -1 && l2.join(map[prev], cand) != map[jn])
                    ok = false;
            }
        }
        if (!ok) continue;
        map[next] = cand;
        used[cand] = 1;
        if (extend_iso(l1, l2, sig1, sig2, map, used, next + 1)) return true;
        map[next] = -1;
        used[cand] = 0;
    }
    return false;
}

bool iso_complete(const Lattice& l1, const Lattice& l2, const std::vector<int>& map) {
    for (int a = 0; a < l1.size(); ++a)
        for (int b = 0; b < l1.size(); ++b) {
            if (map[l1.meet(a, b)] != l2.meet(map[a], map[b])) return false;
            if (map[l1.join(a, b)] != l2.join(map[a], map[b])) return false;
        }
    return true;
}

} // namespace

std::optional<std::vector<int>> is_isomorphic(const Lattice& l1, const Lattice& l2) {
    if (l1.size() != l2.size()) return std::nullopt;
    const int m = l1.size();
    std::vector<IsoSignature> sig1(m), sig2(m);
    for (int x = 0; x < m; ++x) {
        sig1[x] = signature(l1, x);
        sig2[x] = signature(l2, x);
    }
    {
        auto s1 = sig1, s2 = sig2;
        auto key = [](const IsoSignature& s) { return std::tuple(s.height, s.nlower, s.nupper); };
        std::sort(s1.begin(), s1.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
        std::sort(s2.begin(), s2.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
        if (!(s1 == s2)) return std::nullopt;
    }
    std::vector<int> map(m, -1);
    std::vector<char> used(m, 0);
    if (!extend_iso(l1, l2, sig1, sig2, map, used, 0)) return std::nullopt;
    if (!iso_complete(l1, l2, map)) return std::nullopt; // cannot happen; checked anyway
    return map;
}

Decomposition decompose(const Lattice& l) {
    if (auto w = modularity_counterexample(l))
        fail(ErrorKind::NotModular, "modular law fails at (\"" + l.label(w->x) + "\", \"" +
                                        l.label(w->y) + "\", \"" + l.label(w->z) + "\")");
    if (l.size() > 1) {
        if (auto strong = splits_strongly(l))
            fail(ErrorKind::StronglySplits, "strong splitting pair (\"" + l.label(strong->delta) +
                                                "\", \"" + l.label(strong->epsilon) + "\")");
    }

    Lattice current = l;
    // original element -> index in the current peel, plus collected bits
    std::vector<int> cur_of(l.size());
    std::iota(cur_of.begin(), cur_of.end(), 0);
    std::vector<std::vector<int>> bits(l.size());

    while (true) {
        auto pairs = splitting_pairs_unchecked(current);
        if (pairs.empty()) break;
        const SplittingPair& p = pairs.front();
        // least atom below epsilon, least coatom above delta
        int eps = -1, del = -1;
        for (int a : current.upper_covers(current.bottom()))
            if (current.leq(a, p.epsilon)) { eps = a; break; }
        for (int c : current.lower_covers(current.top()))
            if (current.leq(p.delta, c)) { del = c; break; }
        if (eps < 0 || del < 0 || !is_splitting_pair(current, del, eps) || current.leq(eps, del))
            throw std::logic_error("decompose: atom/coatom refinement failed");

        Lattice next = interval(current, current.bottom(), del);
        std::vector<int> next_of(current.size());
        std::vector<int> bit_of(current.size());
        for (int x = 0; x < current.size(); ++x) {
            next_of[x] = next.require_index(current.label(current.meet(x, del)));
            bit_of[x] = current.meet(x, eps) == eps ? 1 : 0;
        }
        // the peel map must be an isomorphism onto [0,del] x {0,1}
        std::vector<char> seen((size_t)next.size() * 2, 0);
        for (int x = 0; x < current.size(); ++x) {
            size_t slot = (size_t)next_of[x] * 2 + bit_of[x];
            if (seen[slot]) throw std::logic_error("decompose: peel map not injective");
            seen[slot] = 1;
        }
        if (current.size() != 2 * next.size())
            throw std::logic_error("decompose: peel map not surjective");
        for (int x = 0; x < current.size(); ++x)
            for (int y = 0; y < current.size(); ++y) {
                int mt = current.meet(x, y), jn = current.join(x, y);
                if (next_of[mt] != next.meet(next_of[x], next_of[y]) ||
                    bit_of[mt] != (bit_of[x] & bit_of[y]) ||
                    next_of[jn] != next.join(next_of[x], next_of[y]) ||
                    bit_of[jn] != (bit_of[x] | bit_of[y]))
                    throw std::logic_error("decompose: peel map not a homomorphism");
            }

        for (size_t i = 0; i < cur_of.size(); ++i) {
            bits[i].push_back(bit_of[cur_of[i]]);
            cur_of[i] = next_of[cur_of[i]];
        }
        current = std::move(next);
    }

    Decomposition d;
    d.core = std::make_shared<Lattice>(std::move(current));
    d.b2_power = bits.empty() ? 0 : (int)bits[0].size();
    d.iso.resize(l.size());
    for (int i = 0; i < l.size(); ++i) d.iso[i] = {cur_of[i], bits[i]};
    return d;
}

Lattice catalog(const std::string& name) {
    using Pairs = std::vector<std::pair<std::string, std::string>>;
    if (name == "ONE") return Lattice::build({"0"}, {});
    if (name == "B2") return Lattice::build({"0", "1"}, {{"0", "1"}});
    if (name == "M2") return product(catalog("B2"), catalog("B2"));
    if (name == "N5")
        return Lattice::build({"0", "x", "z", "y", "1"},
                              {{"0", "x"}, {"x", "z"}, {"z", "1"}, {"0", "y"}, {"y", "1"}});
    if (name.size() > 1 && (name[0] == 'C' || name[0] == 'M')) {
        const std::string digits = name.substr(1);
        if (!digits.empty() &&
            std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            long k = std::stol(digits);
            if (name[0] == 'C' && k >= 1 && k <= 60) {
                std::vector<std::string> elems;
                Pairs pairs;
                elems.push_back("0");
                for (long i = 1; i + 1 < k; ++i) elems.push_back("c" + std::to_string(i));
                if (k > 1) elems.push_back("1");
                for (size_t i = 0; i + 1 < elems.size(); ++i)
                    pairs.push_back({elems[i], elems[i + 1]});
                return Lattice::build(std::move(elems), pairs);
            }
            if (name[0] == 'M' && k >= 3 && k <= 26) {
                std::vector<std::string> elems{"0"};
                Pairs pairs;
                for (long i = 0; i < k; ++i) {
                    std::string a(1, (char)('a' + i));
                    elems.push_back(a);
                    pairs.push_back({"0", a});
                    pairs.push_back({a, "1"});
                }
                elems.push_back("1");
                return Lattice::build(std::move(elems), pairs);
            }
        }
    }
    fail(ErrorKind::UnknownName, "no built-in lattice named \"" + name + "\"");
}

LatticeAxiomReport verify_lattice_axioms(const Lattice& l) {
    LatticeAxiomReport r;
    const int m = l.size();
    auto note = [&](bool& flag, const std::string& msg) {
        flag = false;
        r.failures.push_back(msg);
    };
    for (int a = 0; a < m && r.reflexive; ++a)
        if (!l.leq(a, a)) note(r.reflexive, "reflexivity fails at " + l.label(a));
    for (int a = 0; a < m && r.antisymmetric; ++a)
        for (int b = 0; b < m && r.antisymmetric; ++b)
            if (a != b && l.leq(a, b) && l.leq(b, a))
                note(r.antisymmetric, "antisymmetry fails at (" + l.label(a) + "," + l.label(b) + ")");
    for (int a = 0; a < m && r.transitive; ++a)
        for (int b = 0; b < m && r.transitive; ++b)
            for (int c = 0; c < m && r.transitive; ++c)
                if (l.leq(a, b) && l.leq(b, c) && !l.leq(a, c))
                    note(r.transitive, "transitivity fails at (" + l.label(a) + "," + l.label(b) +
                                           "," + l.label(c) + ")");
    for (int a = 0; a < m && r.bounds_ok; ++a)
        if (!l.leq(l.bottom(), a) || !l.leq(a, l.top()))
            note(r.bounds_ok, "bounds fail at " + l.label(a));
    for (int a = 0; a < m && r.glb_lub; ++a)
        for (int b = 0; b < m && r.glb_lub; ++b) {
            int mt = l.meet(a, b), jn = l.join(a, b);
            bool ok = l.leq(mt, a) && l.leq(mt, b) && l.leq(a, jn) && l.leq(b, jn);
            for (int x = 0; x < m && ok; ++x) {
                if (l.leq(x, a) && l.leq(x, b) && !l.leq(x, mt)) ok = false;
                if (l.leq(a, x) && l.leq(b, x) && !l.leq(jn, x)) ok = false;
            }
            if (!ok) note(r.glb_lub, "glb/lub fails at (" + l.label(a) + "," + l.label(b) + ")");
        }
    for (int a = 0; a < m && r.commutative; ++a)
        for (int b = 0; b < m && r.commutative; ++b)
            if (l.meet(a, b) != l.meet(b, a) || l.join(a, b) != l.join(b, a))
                note(r.commutative, "commutativity fails at (" + l.label(a) + "," + l.label(b) + ")");
    for (int a = 0; a < m && r.associative; ++a)
        for (int b = 0; b < m && r.associative; ++b)
            for (int c = 0; c < m && r.associative; ++c)
                if (l.meet(l.meet(a, b), c) != l.meet(a, l.meet(b, c)) ||
                    l.join(l.join(a, b), c) != l.join(a, l.join(b, c)))
                    note(r.associative, "associativity fails at (" + l.label(a) + "," +
                                            l.label(b) + "," + l.label(c) + ")");
    for (int a = 0; a < m && r.idempotent; ++a)
        if (l.meet(a, a) != a || l.join(a, a) != a)
            note(r.idempotent, "idempotency fails at " + l.label(a));
    for (int a = 0; a < m && r.absorption; ++a)
        for (int b = 0; b < m && r.absorption; ++b)
            if (l.meet(a, l.join(a, b)) != a || l.join(a, l.meet(a, b)) != a)
                note(r.absorption, "absorption fails at (" + l.label(a) + "," + l.label(b) + ")");
    return r;
}

} // namespace latseq
