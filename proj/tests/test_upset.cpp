#include <doctest.h>

#include <algorithm>
#include <random>

#include "latseq/errors.hpp"
#include "latseq/upset.hpp"

using namespace latseq;

namespace {

bool is_antichain(const UpwardClosedSet& u) {
    const auto& g = u.generators();
    for (size_t i = 0; i < g.size(); ++i)
        for (size_t j = 0; j < g.size(); ++j)
            if (i != j && dominates(g[i], g[j])) return false;
    return true;
}

// extensional membership over a box, straight from the generator criterion
std::vector<Vec> box_members(const UpwardClosedSet& u, int bound) {
    std::vector<Vec> out;
    for_each_in_box(u.dim(), bound, [&](const Vec& v) {
        if (u.contains(v)) out.push_back(v);
    });
    return out;
}

} // namespace

TEST_CASE("minimalization drops dominated generators") {
    auto u = UpwardClosedSet::from_generators(2, {{1, 0}, {2, 0}, {0, 2}});
    CHECK(u.generators() == std::vector<Vec>{{0, 2}, {1, 0}});
    CHECK(is_antichain(u));
}

TEST_CASE("empty and full sets") {
    auto none = UpwardClosedSet::empty(3);
    CHECK(none.generators().empty());
    CHECK_FALSE(none.contains({0, 0, 0}));
    CHECK_FALSE(none.contains({5, 5, 5}));

    auto all = UpwardClosedSet::full(3);
    CHECK(all.contains({0, 0, 0}));
    CHECK(all.contains({1, 7, 0}));
    CHECK(all.cap_degree() == 0);
}

TEST_CASE("membership follows the generators") {
    auto u = UpwardClosedSet::from_generators(2, {{1, 0}, {0, 2}});
    CHECK(u.contains({0, 5}));
    CHECK_FALSE(u.contains({0, 1}));
    CHECK(u.contains({1, 0}));
    CHECK(u.contains({3, 1}));
}

TEST_CASE("union and intersection") {
    auto a = UpwardClosedSet::from_generators(2, {{1, 0}});
    auto b = UpwardClosedSet::from_generators(2, {{0, 1}});
    CHECK(a.intersect(b).generators() == std::vector<Vec>{{1, 1}});

    auto c = UpwardClosedSet::from_generators(2, {{2, 0}});
    CHECK(c.unite(a).generators() == std::vector<Vec>{{1, 0}});

    auto full = UpwardClosedSet::full(2);
    CHECK(full.intersect(a) == a);
}

TEST_CASE("subset tests") {
    auto a = UpwardClosedSet::from_generators(2, {{1, 1}});
    auto b = UpwardClosedSet::from_generators(2, {{1, 0}});
    CHECK(a.subset_of(UpwardClosedSet::full(2)));
    CHECK(a.subset_of(b));
    CHECK_FALSE(b.subset_of(a));
}

TEST_CASE("cap degree") {
    CHECK(UpwardClosedSet::from_generators(2, {{1, 0}, {0, 2}}).cap_degree() == 2);
    CHECK(UpwardClosedSet::empty(2).cap_degree() == 0);
    CHECK(UpwardClosedSet::full(4).cap_degree() == 0);
}

TEST_CASE("dimension mismatches are rejected") {
    auto u = UpwardClosedSet::from_generators(2, {{1, 0}});
    auto v = UpwardClosedSet::from_generators(3, {{1, 0, 0}});
    CHECK_THROWS_AS(u.contains({1, 0, 0}), Error);
    CHECK_THROWS_AS(u.unite(v), Error);
    CHECK_THROWS_AS(u.intersect(v), Error);
    CHECK_THROWS_AS(u.subset_of(v), Error);
    CHECK_THROWS_AS(UpwardClosedSet::from_generators(2, {{1, 0, 0}}), Error);
}

TEST_CASE("capping commutes with addition") {
    // min(x+y, c) = min(min(x,c) + min(y,c), c); this is what lets sums of
    // box vectors be evaluated through their capped representatives
    for (int c = 1; c <= 6; ++c)
        for (int x = 0; x <= 2 * c + 3; ++x)
            for (int y = 0; y <= 2 * c + 3; ++y)
                CHECK(std::min(x + y, c) == std::min(std::min(x, c) + std::min(y, c), c));
}

TEST_CASE("membership is invariant under capping at the cap degree") {
    auto u = UpwardClosedSet::from_generators(3, {{1, 0, 2}, {0, 3, 0}});
    const int c = u.cap_degree();
    for_each_in_box(3, c + 3, [&](const Vec& a) {
        CHECK(u.contains(a) == u.contains(cap_vec(a, c)));
    });
}

TEST_CASE("randomized monotone predicates yield finite antichains") {
    std::mt19937 rng(20240517);
    for (int trial = 0; trial < 25; ++trial) {
        const int m = 2 + (int)(rng() % 3);
        const int bound = 3 + (int)(rng() % 2);
        // realize a monotone predicate as an upset of random seeds
        std::vector<Vec> seeds;
        for (int s = 0; s < 5; ++s) {
            Vec v(m);
            for (int i = 0; i < m; ++i) v[i] = (int)(rng() % (bound + 1));
            seeds.push_back(v);
        }
        auto pred = [&](const Vec& a) {
            for (const Vec& s : seeds)
                if (dominates(a, s)) return true;
            return false;
        };
        auto u = UpwardClosedSet::from_predicate(m, bound, pred);
        CHECK(is_antichain(u));
        // and the extracted generators reproduce the predicate on the box
        for_each_in_box(m, bound, [&](const Vec& a) { CHECK(u.contains(a) == pred(a)); });
    }
}

TEST_CASE("set operations agree with extensional ones on boxes") {
    std::mt19937 rng(987654);
    for (int trial = 0; trial < 20; ++trial) {
        const int m = 2 + (int)(rng() % 2);
        auto random_set = [&]() {
            std::vector<Vec> gens;
            for (int g = 0; g < 3; ++g) {
                Vec v(m);
                for (int i = 0; i < m; ++i) v[i] = (int)(rng() % 4);
                gens.push_back(v);
            }
            return UpwardClosedSet::from_generators(m, gens);
        };
        auto a = random_set(), b = random_set();
        auto uni = a.unite(b), inter = a.intersect(b);
        CHECK(is_antichain(uni));
        CHECK(is_antichain(inter));
        for_each_in_box(m, 6, [&](const Vec& v) {
            CHECK(uni.contains(v) == (a.contains(v) || b.contains(v)));
            CHECK(inter.contains(v) == (a.contains(v) && b.contains(v)));
        });
        // subset agrees with extensional containment on a covering box
        bool ext = true;
        for (const Vec& v : box_members(a, 6))
            ext = ext && b.contains(v);
        CHECK(a.subset_of(b) == ext);
    }
}
