#include <xsolve/compiler.hh>
#include <xsolve/errors.hh>

#include <doctest.h>

#include "fixtures.hh"
#include "random_instances.hh"

#include <random>
#include <set>

using namespace xsolve;
using namespace xsolve::testing;

using std::string;
using std::vector;

namespace
{
    const string supports_and_predicate = R"(<relations>
<relation name="R" arity="2" semantics="supports">0 1|1 0|2 2</relation></relations>
<predicates><predicate name="P"><parameters>int a int b</parameters>
<expression><functional>and(gt(a,b),ne(b,0))</functional></expression></predicate></predicates>)";
}

TEST_CASE("the two-variable alldifferent instance compiles to one propagator")
{
    auto [instance, problem] = load(read_file(corpus_dir() / "two_var_alldifferent.xml"));
    REQUIRE(problem.propagators.size() == 1);
    auto & p = problem.propagators[0];
    CHECK(p.kind == PropagatorKind::all_different);
    CHECK(p.scope == vector<std::size_t>{0, 1});
    CHECK(problem.domains == vector<IntegerSet>{IntegerSet::range(1, 2), IntegerSet::range(1, 2)});
    CHECK(problem.output_count() == 2);
}

TEST_CASE("no constraints, no propagators")
{
    auto [instance, problem] = load(instance_xml(2, "1..3", "", ""));
    CHECK(problem.propagators.empty());
    CHECK(problem.domains.size() == 2);
}

TEST_CASE("propagators follow document order")
{
    auto [instance, problem] = load(instance_xml(3, "0..2", supports_and_predicate,
        R"(<constraint name="c1" arity="2" scope="x0 x1" reference="R"/>
           <constraint name="c2" arity="2" scope="x1 x2" reference="P"><parameters>x1 x2</parameters></constraint>)"));
    REQUIRE(problem.propagators.size() == 2);
    CHECK(problem.propagators[0].kind == PropagatorKind::table_supports);
    CHECK(problem.propagators[0].origin == "c1");
    CHECK(std::get<TableData>(problem.propagators[0].data).tuples == vector<Tuple>{{0, 1}, {1, 0}, {2, 2}});
    CHECK(problem.propagators[1].kind == PropagatorKind::expr_check);
    CHECK(problem.propagators[1].scope == vector<std::size_t>{1, 2});
}

TEST_CASE("conflict tables keep their tuples")
{
    auto [instance, problem] = load(instance_xml(2, "0..1",
        R"(<relations><relation name="R" arity="2" semantics="conflicts">1 1</relation></relations>)",
        R"(<constraint name="c" arity="2" scope="x1 x0" reference="R"/>)"));
    REQUIRE(problem.propagators.size() == 1);
    CHECK(problem.propagators[0].kind == PropagatorKind::table_conflicts);
    CHECK(problem.propagators[0].scope == vector<std::size_t>{1, 0});
}

TEST_CASE("intension upgrades")
{
    auto compile = [](const string & body, const string & args) {
        auto xml = instance_xml(3, "0..5",
            "<predicates><predicate name=\"P\"><parameters>int a int b</parameters><expression><functional>" + body +
                "</functional></expression></predicate></predicates>",
            "<constraint name=\"c\" arity=\"2\" scope=\"x0 x1\" reference=\"P\"><parameters>" + args + "</parameters></constraint>");
        auto problem = load(xml).problem;
        REQUIRE(problem.propagators.size() == 1);
        return problem.propagators[0];
    };

    auto ne = compile("ne(a,b)", "x0 x1");
    CHECK(ne.kind == PropagatorKind::not_equal);
    CHECK(ne.scope == vector<std::size_t>{0, 1});

    auto sum = compile("eq(add(a,b),5)", "x0 x1");
    CHECK(sum.kind == PropagatorKind::linear_rel);
    CHECK(sum.scope == vector<std::size_t>{0, 1});
    CHECK(std::get<LinearData>(sum.data) == LinearData{{1, 1}, RelOp::eq, 5});

    auto scaled = compile("le(mul(3,a),sub(b,2))", "x0 x1");
    CHECK(scaled.kind == PropagatorKind::linear_rel);
    CHECK(std::get<LinearData>(scaled.data) == LinearData{{3, -1}, RelOp::le, -2});

    CHECK(compile("and(gt(a,b),ne(b,0))", "x0 x1").kind == PropagatorKind::expr_check);
    CHECK(compile("eq(mul(a,b),4)", "x0 x1").kind == PropagatorKind::expr_check);

    auto three = [](const string & body, const string & args) {
        auto xml = instance_xml(3, "0..5",
            "<predicates><predicate name=\"P\"><parameters>int P0 int P1 int P2</parameters><expression><functional>" + body +
                "</functional></expression></predicate></predicates>",
            "<constraint name=\"c\" arity=\"3\" scope=\"x0 x1 x2\" reference=\"P\"><parameters>" + args + "</parameters></constraint>");
        return load(xml).problem.propagators.at(0);
    };
    auto sum_to_constant = three("eq(add(P0,P1),P2)", "x0 x1 5");
    CHECK(sum_to_constant.kind == PropagatorKind::linear_rel);
    CHECK(sum_to_constant.scope == vector<std::size_t>{0, 1});
    CHECK(std::get<LinearData>(sum_to_constant.data) == LinearData{{1, 1}, RelOp::eq, 5});
    auto chain = three("and(gt(P0,P1),gt(P1,P2))", "x0 x1 x2");
    CHECK(chain.kind == PropagatorKind::expr_check);
    CHECK(chain.scope.size() == 3);

    auto constant_arg = compile("ne(a,b)", "x2 3");
    CHECK(constant_arg.kind == PropagatorKind::linear_rel);
    CHECK(constant_arg.scope == vector<std::size_t>{2});
}

TEST_CASE("global compile errors")
{
    CHECK_THROWS_AS(load(instance_xml(1, "0..1", "",
                        R"(<constraint name="c" arity="1" scope="x0" reference="global:not_all_equal"/>)")),
        CompileError);
    CHECK_THROWS_WITH(load(instance_xml(2, "0..1", "",
                          R"(<constraint name="c" arity="2" scope="x0 x1" reference="global:among"><parameters>[ x0 ]</parameters></constraint>)")),
        doctest::Contains("expected"));
    CHECK_THROWS_AS(load(instance_xml(2, "0..1", "", R"(<constraint name="c" arity="2" scope="x0 x1" reference="global:alldifferent"/>)"),
                        CompileOptions{.element_base = 2}),
        CompileError);
}

TEST_CASE("weightedSum becomes a linear relation")
{
    auto [instance, problem] = load(read_file(corpus_dir() / "weighted_sum.xml"));
    REQUIRE(problem.propagators.size() == 1);
    auto & p = problem.propagators[0];
    CHECK(p.kind == PropagatorKind::linear_rel);
    CHECK(p.scope == vector<std::size_t>{0, 1});
    CHECK(std::get<LinearData>(p.data) == LinearData{{2, 3}, RelOp::le, 10});

    // 2a + 3b <= 10 over 0..3 squared, counted directly
    int count = 0;
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b)
            count += 2 * a + 3 * b <= 10;
    CHECK(count == 12);
}

TEST_CASE("alldifferent can be lowered pairwise")
{
    auto xml = pigeonhole_xml(3);
    auto pairwise = load(xml, {.alldifferent = AllDifferentLowering::pairwise}).problem;
    CHECK(pairwise.propagators.size() == 6);
    for (auto & p : pairwise.propagators) {
        CHECK(p.kind == PropagatorKind::not_equal);
        CHECK(p.scope.size() == 2);
        CHECK(p.scope[0] < p.scope[1]);
    }
    CHECK(load(xml).problem.propagators.size() == 1);
}

TEST_CASE("integer constants in globals become fixed auxiliaries")
{
    auto [instance, problem] = load(instance_xml(2, "0..3", "",
        R"(<constraint name="c" arity="2" scope="x0 x1" reference="global:element"><parameters>x0 [ 2 x1 2 ] 2</parameters></constraint>)"));
    CHECK(problem.output_count() == 2);
    REQUIRE(problem.domains.size() == 3);
    CHECK(problem.domains[2] == IntegerSet::singleton(2));
    REQUIRE(problem.propagators.size() == 1);
    CHECK(problem.propagators[0].scope == vector<std::size_t>{0, 2, 1, 2, 2});
}

TEST_CASE("debug text round trips every compiled spec")
{
    std::mt19937_64 rng{4242};
    std::size_t seen = 0;
    for (auto & family : families())
        for (int i = 0; i < 30; ++i) {
            auto problem = load(to_xml(generate(family, rng))).problem;
            for (auto & spec : problem.propagators) {
                auto text = to_debug_string(spec);
                INFO(text);
                REQUIRE(spec_from_debug_string(text) == spec);
                ++seen;
            }
        }
    for (auto & entry : std::filesystem::directory_iterator(corpus_dir()))
        if (entry.path().extension() == ".xml")
            for (auto & spec : load(read_file(entry.path())).problem.propagators)
                REQUIRE(spec_from_debug_string(to_debug_string(spec)) == spec);
    CHECK(seen > 500);
}

TEST_CASE("kind names are distinct")
{
    std::set<string> names;
    for (auto k : all_propagator_kinds())
        names.insert(string{kind_name(k)});
    CHECK(names.size() == 14);
    CHECK(all_propagator_kinds().size() == 14);
}
