#include <xsolve/engine.hh>
#include <xsolve/propagators.hh>

#include <doctest.h>

#include "fixtures.hh"
#include "random_instances.hh"

#include <random>
#include <set>

using namespace xsolve;
using namespace xsolve::testing;

using std::size_t;
using std::vector;

namespace
{
    auto store_of(vector<IntegerSet> domains) -> DomainStore
    {
        return DomainStore{std::move(domains)};
    }

    auto run(const PropagatorSpec & spec, DomainStore & store) -> PruneResult
    {
        return make_propagator(spec)->run(store);
    }

    auto r(Integer lo, Integer hi) -> IntegerSet
    {
        return IntegerSet::range(lo, hi);
    }
}

TEST_CASE("support table prunes to supported values")
{
    PropagatorSpec spec{PropagatorKind::table_supports, {0, 1}, TableData{{{1, 2}, {2, 1}}}, "c"};
    auto store = store_of({r(1, 2), IntegerSet::singleton(2)});
    CHECK(run(spec, store) != PruneResult::failed);
    CHECK(store.domain(0) == IntegerSet::singleton(1));
    CHECK(store.domain(1) == IntegerSet::singleton(2));
}

TEST_CASE("conflict table prunes only the last open value")
{
    PropagatorSpec spec{PropagatorKind::table_conflicts, {0, 1}, TableData{{{1, 1}, {1, 2}}}, "c"};
    auto store = store_of({r(1, 2), r(1, 2)});
    CHECK(run(spec, store) == PruneResult::no_change);
    store.assign(1, 1);
    run(spec, store);
    CHECK(store.domain(0) == IntegerSet::singleton(2));
}

TEST_CASE("linear equality tightens bounds")
{
    PropagatorSpec spec{PropagatorKind::linear_rel, {0, 1}, LinearData{{1, 1}, RelOp::eq, 5}, "c"};
    auto store = store_of({r(0, 3), r(0, 3)});
    CHECK(run(spec, store) == PruneResult::changed);
    CHECK(store.domain(0) == r(2, 3));
    CHECK(store.domain(1) == r(2, 3));
}

TEST_CASE("linear inequality and disequality")
{
    PropagatorSpec le{PropagatorKind::linear_rel, {0, 1}, LinearData{{2, 3}, RelOp::le, 10}, "c"};
    auto store = store_of({r(0, 9), r(0, 9)});
    run(le, store);
    CHECK(store.domain(0) == r(0, 5));
    CHECK(store.domain(1) == r(0, 3));

    PropagatorSpec ne{PropagatorKind::linear_rel, {0, 1}, LinearData{{1, -1}, RelOp::ne, 0}, "c"};
    auto s2 = store_of({IntegerSet::singleton(2), r(1, 3)});
    run(ne, s2);
    CHECK(s2.domain(1) == IntegerSet::from_values({1, 3}));
}

TEST_CASE("alldifferent on two values")
{
    PropagatorSpec spec{PropagatorKind::all_different, {0, 1}, {}, "c"};
    auto store = store_of({r(1, 2), r(1, 2)});
    CHECK(run(spec, store) == PruneResult::no_change);
    store.assign(0, 1);
    CHECK(run(spec, store) != PruneResult::failed);
    CHECK(store.domain(1) == IntegerSet::singleton(2));

    auto pigeons = store_of({r(1, 2), r(1, 2), r(1, 2)});
    CHECK(run(PropagatorSpec{PropagatorKind::all_different, {0, 1, 2}, {}, "c"}, pigeons) == PruneResult::failed);
    CHECK(pigeons.failed());
}

TEST_CASE("not equal")
{
    PropagatorSpec spec{PropagatorKind::not_equal, {0, 1}, {}, "c"};
    auto store = store_of({IntegerSet::singleton(3), r(2, 4)});
    CHECK(run(spec, store) == PruneResult::subsumed);
    CHECK(store.domain(1) == IntegerSet::from_values({2, 4}));
}

TEST_CASE("failure cases at the root")
{
    auto empty_table = store_of({r(0, 2)});
    CHECK(run(PropagatorSpec{PropagatorKind::table_supports, {0}, TableData{}, "c"}, empty_table) == PruneResult::failed);
    CHECK(empty_table.failed());

    auto empty_domain = store_of({IntegerSet{}, r(0, 1)});
    CHECK(run(PropagatorSpec{PropagatorKind::not_equal, {0, 1}, {}, "c"}, empty_domain) == PruneResult::failed);

    auto constant_false = store_of({});
    CHECK(run(PropagatorSpec{PropagatorKind::expr_check, {}, ExprData{parse_ground("eq(1,2)")}, "c"}, constant_false) ==
        PruneResult::failed);
    CHECK(constant_false.failed());
}

TEST_CASE("counting propagators")
{
    // among: count of {1} in x0 x1 is x2
    PropagatorSpec among{PropagatorKind::among, {0, 1, 2}, CountData{IntegerSet::singleton(1), 0}, "c"};
    auto s = store_of({IntegerSet::singleton(1), IntegerSet::singleton(1), r(0, 5)});
    run(among, s);
    CHECK(s.domain(2) == IntegerSet::singleton(2));

    PropagatorSpec at_most{PropagatorKind::at_most, {0, 1, 2}, CountData{IntegerSet::singleton(0), 1}, "c"};
    auto m = store_of({IntegerSet::singleton(0), r(0, 1), r(0, 1)});
    run(at_most, m);
    CHECK(m.domain(1) == IntegerSet::singleton(1));
    CHECK(m.domain(2) == IntegerSet::singleton(1));

    PropagatorSpec at_least{PropagatorKind::at_least, {0, 1}, CountData{IntegerSet::singleton(4), 2}, "c"};
    auto l = store_of({r(3, 4), r(4, 6)});
    run(at_least, l);
    CHECK(l.domain(0) == IntegerSet::singleton(4));
    CHECK(l.domain(1) == IntegerSet::singleton(4));
}

TEST_CASE("element")
{
    // x0 indexes [x1 x2]; value x3
    PropagatorSpec spec{PropagatorKind::element, {0, 1, 2, 3}, ElementData{1}, "c"};
    auto s = store_of({r(0, 5), IntegerSet::singleton(7), IntegerSet::singleton(9), IntegerSet::from_values({9, 11})});
    run(spec, s);
    CHECK(s.domain(0) == IntegerSet::singleton(2));
    CHECK(s.domain(3) == IntegerSet::singleton(9));
}

TEST_CASE("cumulative compulsory parts")
{
    // two tasks of duration 2 and height 2 under capacity 3
    PropagatorSpec spec{PropagatorKind::cumulative, {0, 1}, CumulativeData{{2, 2}, {2, 2}, 3}, "c"};
    auto s = store_of({IntegerSet::singleton(1), r(0, 4)});
    run(spec, s);
    CHECK(s.domain(1) == IntegerSet::from_values({3, 4}));
}

TEST_CASE("lex")
{
    PropagatorSpec less{PropagatorKind::lex_less, {0, 1, 2, 3}, {}, "c"};
    auto s = store_of({IntegerSet::singleton(2), r(0, 3), IntegerSet::singleton(2), r(0, 3)});
    run(less, s);
    CHECK(s.domain(1).max() == 2);
    CHECK(s.domain(3).min() == 1);

    auto equal = store_of({IntegerSet::singleton(1), IntegerSet::singleton(1)});
    CHECK(run(PropagatorSpec{PropagatorKind::lex_less, {0, 1}, {}, "c"}, equal) == PruneResult::failed);
    auto equal_ok = store_of({IntegerSet::singleton(1), IntegerSet::singleton(1)});
    CHECK(run(PropagatorSpec{PropagatorKind::lex_less_eq, {0, 1}, {}, "c"}, equal_ok) == PruneResult::subsumed);
}

TEST_CASE("random narrowing never removes a supported value")
{
    std::mt19937_64 rng{77};
    std::set<PropagatorKind> kinds;
    for (auto & family : families())
        for (int round = 0; round < 150; ++round) {
            auto inst = generate(family, rng);
            for (size_t c = 0; c < inst.constraints.size(); ++c) {
                auto problem = load(to_xml(inst, {c})).problem;

                // random nonempty subdomains
                auto narrowed = inst;
                for (auto & d : narrowed.domains) {
                    vector<std::int64_t> keep;
                    for (auto v : d)
                        if (std::uniform_int_distribution<int>(0, 2)(rng) != 0)
                            keep.push_back(v);
                    if (keep.empty())
                        keep.push_back(d[static_cast<size_t>(rng() % d.size())]);
                    d = keep;
                }
                auto domains = problem.domains;
                for (size_t v = 0; v < narrowed.domains.size(); ++v)
                    domains[v] = IntegerSet::from_values(narrowed.domains[v]);

                auto solutions = brute_force(narrowed, {c});
                for (auto & spec : problem.propagators) {
                    kinds.insert(spec.kind);
                    DomainStore store{domains};
                    auto result = make_propagator(spec)->run(store);
                    INFO(to_xml(inst, {c}));
                    INFO(to_debug_string(spec));
                    if (result == PruneResult::failed) {
                        REQUIRE(solutions.empty());
                        continue;
                    }
                    for (auto & a : solutions)
                        for (size_t v = 0; v < a.size(); ++v)
                            REQUIRE(store.contains(v, a[v]));

                    if (result == PruneResult::subsumed && problem.propagators.size() == 1) {
                        // every completion of the narrowed store satisfies the constraint
                        auto after = narrowed;
                        for (size_t v = 0; v < after.domains.size(); ++v) {
                            auto values = store.domain(v).values();
                            after.domains[v] = {values.begin(), values.end()};
                        }
                        std::size_t total = 1;
                        for (auto & d : after.domains)
                            total *= d.size();
                        REQUIRE(brute_force(after, {c}).size() == total);
                    }
                }
            }
        }
    CHECK(kinds.size() == all_propagator_kinds().size());
}
