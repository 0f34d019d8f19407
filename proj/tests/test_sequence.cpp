#include <doctest.h>

#include <algorithm>
#include <random>

#include "latseq/errors.hpp"
#include "latseq/sequence.hpp"

using namespace latseq;

namespace {

std::shared_ptr<const Lattice> shared_catalog(const std::string& name) {
    return std::make_shared<const Lattice>(catalog(name));
}

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    throw std::logic_error("expected an Error");
}

// table of the sequence that is the identity at arity 1 and bottom beyond,
// on the two-element lattice
TruncatedTable unary_identity_table(std::shared_ptr<const Lattice> b2, int bound) {
    std::map<Vec, int> values;
    Vec v(2, 0);
    for (int x = 0; x <= bound; ++x)
        for (int y = 0; y + x <= bound; ++y) {
            if (x + y == 0) continue;
            values[{x, y}] = (x == 0 && y == 1) ? b2->top() : b2->bottom();
        }
    return TruncatedTable(std::move(b2), bound, std::move(values));
}

} // namespace

TEST_CASE("the three sequences on the two-element lattice have the frozen levels") {
    auto b2 = shared_catalog("B2");
    auto seqs = b2_sequences(b2);
    REQUIRE(seqs.size() == 3);
    const auto& zero = seqs[0];
    const auto& unary = seqs[1];
    const auto& meet = seqs[2];

    CHECK(zero.level(0).generators() == std::vector<Vec>{{0, 1}, {1, 0}});
    CHECK(zero.level(1).generators() == std::vector<Vec>{{0, 1}, {1, 0}});
    CHECK(unary.level(0).generators() == std::vector<Vec>{{0, 2}, {1, 0}});
    CHECK(unary.level(1).generators() == std::vector<Vec>{{0, 1}, {1, 0}});
    CHECK(meet.level(0).generators() == std::vector<Vec>{{1, 0}});
    CHECK(meet.level(1).generators() == std::vector<Vec>{{0, 1}, {1, 0}});

    for (const auto& s : seqs) CHECK(check_admissible(s).admissible());
}

TEST_CASE("tables turn into level families") {
    auto b2 = shared_catalog("B2");

    // all-bottom table
    std::map<Vec, int> zero_values{{{0, 1}, 0}, {{1, 0}, 0}, {{1, 1}, 0}, {{0, 2}, 0}, {{2, 0}, 0}};
    auto zero = from_truncated_table(TruncatedTable(b2, 2, zero_values));
    CHECK(zero == b2_sequences(b2)[0]);

    // identity at arity 1, bottom beyond: the frozen generator sets below
    // were computed by evaluating that rule directly over the box [0,3]^2
    auto unary = from_truncated_table(unary_identity_table(b2, 2));
    CHECK(unary.level(0).generators() == std::vector<Vec>{{0, 2}, {1, 0}});
    CHECK(unary.level(1).generators() == std::vector<Vec>{{0, 1}, {1, 0}});
    CHECK(unary == b2_sequences(b2)[1]);

    // the bound does not matter once the tail is forced
    CHECK(from_truncated_table(unary_identity_table(b2, 3)) == unary);
}

TEST_CASE("direct evaluation oracle for the unary-identity levels") {
    auto b2 = shared_catalog("B2");
    auto rule = [&](const Vec& v) { return (v[0] == 0 && v[1] == 1) ? 1 : 0; };
    for (int level = 0; level <= 1; ++level) {
        auto expected = UpwardClosedSet::from_predicate(2, 3, [&](const Vec& v) {
            return !is_zero(v) && b2->leq(rule(v), level);
        });
        CHECK(expected == b2_sequences(b2)[1].level(level));
    }
}

TEST_CASE("inconsistent tables are rejected but can still be axiom-checked") {
    auto b2 = shared_catalog("B2");
    // E(0,1) = 0 but E(0,2) = 1: not antitone, levels would not be upward closed
    std::map<Vec, int> values{{{0, 1}, 0}, {{1, 0}, 0}, {{1, 1}, 0}, {{2, 0}, 0}, {{0, 2}, 1}};
    TruncatedTable t(b2, 2, values);
    CHECK(kind_of([&] { from_truncated_table(t); }) == ErrorKind::InconsistentTable);

    auto report = check_admissible(t);
    CHECK_FALSE(report.admissible());
    CHECK_FALSE(report.axiom("HC3").passed);
    CHECK(report.axiom("HC3").witness.find("a=(0,1), i=1") != std::string::npos);
}

TEST_CASE("binary meet with a forced zero tail fails the nesting axiom") {
    auto b2 = shared_catalog("B2");
    // meet up to arity 2, bottom from arity 3 on
    std::map<Vec, int> values;
    values[{0, 1}] = 1;
    values[{1, 0}] = 0;
    values[{0, 2}] = 1;
    values[{1, 1}] = 0;
    values[{2, 0}] = 0;
    values[{0, 3}] = 0;
    values[{1, 2}] = 0;
    values[{2, 1}] = 0;
    values[{3, 0}] = 0;
    TruncatedTable t(b2, 3, values);
    auto report = check_admissible(t);
    CHECK_FALSE(report.axiom("HC8").passed);
    CHECK(report.axiom("HC8").witness.find("b=(0,1), c=(0,2)") != std::string::npos);
    // the table is antitone, so the level route exists and agrees
    auto p = from_truncated_table(t);
    CHECK_FALSE(check_admissible(p).axiom("HC8").passed);
}

TEST_CASE("evaluation basics") {
    auto b2 = shared_catalog("B2");
    auto seqs = b2_sequences(b2);
    CHECK(seqs[2].evaluate({1, 1, 1}) == 1);
    CHECK(seqs[2].evaluate({1, 0, 1}) == 0);
    CHECK(seqs[1].evaluate({1}) == 1);
    CHECK(seqs[1].evaluate({1, 1}) == 0);
    for (const auto& s : seqs) CHECK(s.evaluate({0, 1, 1}) == 0);
    CHECK(kind_of([&] { seqs[0].evaluate({}); }) == ErrorKind::EmptyArgs);
}

TEST_CASE("evaluation only sees the multiset of arguments") {
    auto m3 = shared_catalog("M3");
    auto meet_like = presentation_from_eval(m3, 1, [&](const Vec& v) {
        int r = m3->top();
        for (int i = 0; i < m3->size(); ++i)
            if (v[i] > 0) r = m3->meet(r, i);
        return r;
    });
    std::vector<int> args{1, 2, 4, 2};
    std::mt19937 rng(42);
    int expected = meet_like.evaluate(args);
    for (int trial = 0; trial < 10; ++trial) {
        std::shuffle(args.begin(), args.end(), rng);
        CHECK(meet_like.evaluate(args) == expected);
    }
}

TEST_CASE("the level order agrees with pointwise comparison") {
    auto b2 = shared_catalog("B2");
    auto seqs = b2_sequences(b2);
    CHECK(leq_sequences(seqs[0], seqs[1]));
    CHECK(leq_sequences(seqs[1], seqs[2]));
    CHECK(leq_sequences(seqs[0], seqs[2]));
    CHECK_FALSE(leq_sequences(seqs[2], seqs[1]));
    for (const auto& p : seqs) CHECK(leq_sequences(p, p));
    for (const auto& p : seqs)
        for (const auto& q : seqs) CHECK(leq_sequences(p, q) == pointwise_leq(p, q, 4));

    // separately built but equal lattices compare fine
    CHECK(leq_sequences(seqs[0], b2_sequences(shared_catalog("B2"))[0]));

    auto m3 = shared_catalog("M3");
    CHECK(kind_of([&] {
        auto other = presentation_from_eval(m3, 1, [&](const Vec&) { return m3->bottom(); });
        leq_sequences(seqs[0], other);
    }) == ErrorKind::LatticeMismatch);
}

TEST_CASE("products act componentwise") {
    auto b2 = shared_catalog("B2");
    auto seqs = b2_sequences(b2);
    const auto& zero = seqs[0];
    const auto& unary = seqs[1];
    const auto& meet = seqs[2];

    auto mm = product_sequence(meet, meet);
    const Lattice& m2 = mm.lattice();
    CHECK(m2.same_content(catalog("M2")));
    CHECK(check_admissible(mm).admissible());
    // the componentwise meet of meets is the meet on the product
    for (int arity = 1; arity <= 3; ++arity) {
        std::vector<int> args(arity, 0);
        while (true) {
            int expected = args[0];
            for (int i = 1; i < arity; ++i) expected = m2.meet(expected, args[i]);
            CHECK(mm.evaluate(args) == expected);
            int i = arity - 1;
            while (i >= 0 && args[i] == m2.size() - 1) args[i--] = 0;
            if (i < 0) break;
            ++args[i];
        }
    }

    auto zz = product_sequence(zero, zero);
    for (int x = 0; x < zz.lattice().size(); ++x) CHECK(zz.evaluate({x}) == zz.lattice().bottom());

    auto uz = product_sequence(unary, zero);
    // arity one keeps the first coordinate, arity two vanishes
    int arg = uz.lattice().require_index("(1,1)");
    CHECK(uz.lattice().label(uz.evaluate({arg})) == "(1,0)");
    CHECK(uz.evaluate({arg, arg}) == uz.lattice().bottom());
    CHECK(check_admissible(uz).admissible());
}

TEST_CASE("projections undo products") {
    auto b2 = shared_catalog("B2");
    auto seqs = b2_sequences(b2);
    for (const auto& p1 : seqs)
        for (const auto& p2 : seqs) {
            auto prod = product_sequence(p1, p2);
            CHECK(project_sequence(prod, 1) == p1);
            CHECK(project_sequence(prod, 2) == p2);
        }
    auto hh = product_sequence(seqs[2], seqs[2]);
    CHECK(project_sequence(hh, 1) == seqs[2]);
    CHECK(check_admissible(project_sequence(hh, 1)).admissible());

    auto m3 = shared_catalog("M3");
    auto flat = presentation_from_eval(m3, 1, [&](const Vec&) { return m3->bottom(); });
    CHECK(kind_of([&] { project_sequence(flat, 1); }) == ErrorKind::NotAProduct);
}

TEST_CASE("lower central series") {
    auto b2 = shared_catalog("B2");
    auto seqs = b2_sequences(b2);

    CentralSeries zs = lower_central_series(seqs[0]);
    CHECK(zs.terms == std::vector<int>{1, 0});
    CHECK(zs.nilpotent);
    CHECK(zs.nilpotency_class == 1);

    CentralSeries hs = lower_central_series(seqs[2]);
    CHECK_FALSE(hs.nilpotent);
    CHECK(hs.terms == std::vector<int>{1});

    // the strong-pair sequence on the three-element chain
    auto c3 = shared_catalog("C3");
    int theta = c3->require_index("c1");
    auto sp = strong_pair_sequence(c3, SplittingPair{theta, theta, true});
    CHECK(check_admissible(sp).admissible());
    CentralSeries cs = lower_central_series(sp);
    CHECK(cs.terms == std::vector<int>{c3->top(), theta, c3->bottom()});
    CHECK(cs.nilpotent);
    CHECK(cs.nilpotency_class == 2);
}

TEST_CASE("vanishing arity") {
    auto b2 = shared_catalog("B2");
    auto seqs = b2_sequences(b2);
    CHECK(vanishing_arity(seqs[0]) == 1);
    CHECK(vanishing_arity(seqs[1]) == 2);
    CHECK_FALSE(vanishing_arity(seqs[2]).has_value());
}

TEST_CASE("evaluation is invariant under capping") {
    auto b2 = shared_catalog("B2");
    auto c3 = shared_catalog("C3");
    int theta = c3->require_index("c1");
    std::vector<SequencePresentation> ps = b2_sequences(b2);
    ps.push_back(strong_pair_sequence(c3, SplittingPair{theta, theta, true}));
    for (const auto& p : ps) {
        const int c = p.cap_degree();
        for_each_in_box(p.lattice().size(), c + 3, [&](const Vec& v) {
            if (is_zero(v)) return;
            CHECK(p.eval_vector(v) == p.eval_vector(cap_vec(v, c)));
        });
    }
}

TEST_CASE("levels reproduce evaluation extensionally") {
    auto b2 = shared_catalog("B2");
    for (const auto& p : b2_sequences(b2)) {
        for (int x = 0; x < 2; ++x)
            for_each_in_box(2, p.cap_degree() + 2, [&](const Vec& v) {
                if (is_zero(v)) return;
                CHECK(p.level(x).contains(v) == p.lattice().leq(p.eval_vector(v), x));
            });
    }
}

TEST_CASE("structural validation rejects broken level families") {
    auto b2 = shared_catalog("B2");
    // empty top level: totality fails
    CHECK(kind_of([&] {
        SequencePresentation(b2, {UpwardClosedSet::empty(2), UpwardClosedSet::empty(2)});
    }) == ErrorKind::InvalidPresentation);
    // zero generator
    CHECK(kind_of([&] {
        SequencePresentation(b2, {UpwardClosedSet::full(2), UpwardClosedSet::full(2)});
    }) == ErrorKind::InvalidPresentation);
    // wrong level count
    CHECK(kind_of([&] {
        SequencePresentation(b2, {UpwardClosedSet::empty(2)});
    }) == ErrorKind::InvalidPresentation);
    // non-monotone (hence meet-incompatible) family
    CHECK(kind_of([&] {
        SequencePresentation(b2, {UpwardClosedSet::from_generators(2, {{0, 1}, {1, 0}}),
                                  UpwardClosedSet::from_generators(2, {{1, 0}})});
    }) == ErrorKind::InvalidPresentation);
}

TEST_CASE("tables reject values above the support meet") {
    auto b2 = shared_catalog("B2");
    std::map<Vec, int> values{{{0, 1}, 1}, {{1, 0}, 1}};
    CHECK(kind_of([&] { TruncatedTable(b2, 1, values); }) == ErrorKind::InconsistentTable);
    std::map<Vec, int> partial{{{0, 1}, 1}};
    CHECK(kind_of([&] { TruncatedTable(b2, 1, partial); }) == ErrorKind::InconsistentTable);
}
