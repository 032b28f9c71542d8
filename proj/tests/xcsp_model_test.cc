#include <xsolve/errors.hh>
#include <xsolve/xcsp_model.hh>

#include <doctest.h>

#include "random_instances.hh"

#include <random>

using namespace xsolve;

using doctest::Contains;
using std::string;
using std::vector;

namespace
{
    const string snippet = R"(<instance>
<presentation name="snippet" format="XCSP 2.1"/>
<domains nbDomains="1">
  <domain name="d0" nbValues="2">1..2</domain>
</domains>
<variables nbVariables="2">
  <variable name="A1" domain="d0"/>
  <variable name="A2" domain="d0"/>
</variables>
<constraint name="c0"  arity="2"
     scope="A1 A2"
     reference="global:alldifferent"/>
</instance>)";

    auto wrap(const string & body) -> string
    {
        return R"(<instance><presentation name="t"/><domains><domain name="D" nbValues="3">0..2</domain></domains>
<variables><variable name="X" domain="D"/><variable name="Y" domain="D"/><variable name="Z" domain="D"/></variables>)" +
            body + "</instance>";
    }

    auto has_warning(const std::vector<string> & warnings, const string & part) -> bool
    {
        for (auto & w : warnings)
            if (w.find(part) != string::npos)
                return true;
        return false;
    }
}

TEST_CASE("the two-variable alldifferent snippet")
{
    auto m = parse_instance(snippet);
    CHECK(m.domains.size() == 1);
    CHECK(m.variables.size() == 2);
    CHECK(m.relations.empty());
    CHECK(m.predicates.empty());
    REQUIRE(m.constraints.size() == 1);
    CHECK(m.constraints[0].reference == "global:alldifferent");
    CHECK(m.constraints[0].scope == vector<string>{"A1", "A2"});
    CHECK(m.domains[0].values == IntegerSet::range(1, 2));
    CHECK(m.domains[0].declared_count == 2u);
    CHECK(has_warning(m.warnings, "outside a <constraints> section"));

    auto r = resolve_references(m);
    REQUIRE(r.constraints.size() == 1);
    CHECK(r.constraints[0].scope == vector<std::size_t>{0, 1});
    CHECK(r.constraints[0].reference == ConstraintReference{GlobalRef{"alldifferent"}});
    CHECK(r.variables[1].name == "A2");
    CHECK(r.variables[1].domain == IntegerSet::range(1, 2));
}

TEST_CASE("zero constraints")
{
    auto m = parse_instance(wrap("<constraints nbConstraints=\"0\"/>"));
    CHECK(m.constraints.empty());
    CHECK(m.declared.constraints == 0u);
    CHECK(resolve_references(m).constraints.empty());
}

TEST_CASE("tuple lists")
{
    CHECK(parse_tuples("1 2|2 1", 2) == vector<Tuple>{{1, 2}, {2, 1}});
    CHECK(parse_tuples("", 3).empty());
    CHECK(parse_tuples("0 0 0|1 -1 2|3 3 3", 3) == vector<Tuple>{{0, 0, 0}, {1, -1, 2}, {3, 3, 3}});
    CHECK(parse_tuples(" 1 1 | 1 1 ", 2) == vector<Tuple>{{1, 1}, {1, 1}});
    CHECK_THROWS_WITH(parse_tuples("1 2|3", 2), Contains("tuple 1"));
    CHECK_THROWS_AS(parse_tuples("1 a", 2), FormatError);
}

TEST_CASE("malformed XML reports a position")
{
    try {
        parse_instance("<instance>\n  <domains>\n  </variables>\n</instance>");
        FAIL("no error");
    }
    catch (const ParseError & e) {
        CHECK(e.line() == 3);
        CHECK(e.column() > 0);
    }
    CHECK_THROWS_AS(parse_instance("not xml at all"), ParseError);
}

TEST_CASE("structural errors")
{
    CHECK_THROWS_WITH(parse_instance("<instance><presentation/>"
                                     "<domains><domain name=\"D\">1</domain></domains></instance>"),
        Contains("variables"));
    CHECK_THROWS_WITH(parse_instance(R"(<instance><domains><domain name="D">1</domain></domains>
        <variables><variable name="X" domain="D"/></variables></instance>)"),
        Contains("constraints"));
    CHECK_THROWS_WITH(parse_instance(wrap(R"(<relations><relation name="R" arity="1" semantics="supports">1</relation>
        <relation name="R" arity="1" semantics="conflicts">2</relation></relations><constraints/>)")),
        Contains("duplicate relation name 'R'"));
    CHECK_THROWS_WITH(parse_instance(R"(<instance><domains><domain name="D">1</domain></domains>
        <variables><variable name="X" domain="D"/><variable name="X" domain="D"/></variables><constraints/></instance>)"),
        Contains("duplicate variable name 'X'"));
    CHECK_THROWS_AS(parse_instance(wrap(R"(<constraints><constraint name="c" scope="X" reference="global:alldifferent"/></constraints>)")),
        StructuralError);
    CHECK_THROWS_AS(parse_instance(wrap("<relations><relation name=\"R\" arity=\"2\" semantics=\"supports\">1 2|3</relation></relations><constraints/>")),
        FormatError);
}

TEST_CASE("unknown attributes are warnings")
{
    auto m = parse_instance(wrap(R"(<constraints><constraint name="c" arity="2" scope="X Y" reference="global:alldifferent" colour="red"/></constraints>)"));
    CHECK(has_warning(m.warnings, "colour"));
    CHECK(m.constraints.size() == 1);
}

TEST_CASE("extensions are rejected")
{
    CHECK_THROWS_WITH(parse_instance(wrap("<constraints maximalCost=\"4\"/>")), Contains("unsupported extension"));
    CHECK_THROWS_AS(parse_instance(wrap("<quantification><block quantifier=\"forall\" scope=\"X\"/></quantification><constraints/>")),
        UnsupportedExtension);
    CHECK_THROWS_AS(parse_instance(wrap(R"(<relations><relation name="R" arity="1" semantics="soft" defaultCost="1">0: 1</relation></relations><constraints/>)")),
        UnsupportedExtension);
}

TEST_CASE("resolution errors")
{
    auto resolve = [](const string & body) { return resolve_references(parse_instance(wrap(body))); };

    CHECK_THROWS_WITH(resolve(R"(<constraints><constraint name="c" arity="2" scope="X X" reference="global:alldifferent"/></constraints>)"),
        Contains("twice"));
    CHECK_THROWS_WITH(resolve(R"(<relations><relation name="R" arity="3" semantics="supports">0 0 0</relation></relations>
        <constraints><constraint name="c" arity="2" scope="X Y" reference="R"/></constraints>)"),
        Contains("arity"));
    CHECK_THROWS_WITH(resolve(R"(<constraints><constraint name="c" arity="2" scope="X Y" reference="nowhere"/></constraints>)"),
        Contains("nowhere"));
    CHECK_THROWS_WITH(resolve(R"(<constraints><constraint name="c" arity="2" scope="X W" reference="global:alldifferent"/></constraints>)"),
        Contains("'W'"));
    CHECK_THROWS_WITH(resolve(R"(<constraints><constraint name="c" arity="2" scope="X Y" reference="global:circuit"/></constraints>)"),
        Contains("weightedSum"));
    CHECK_THROWS_WITH(resolve(R"(<constraints><constraint name="c" arity="1" scope="X Y" reference="global:alldifferent"/></constraints>)"),
        Contains("arity 1"));
    CHECK_THROWS_AS(resolve_references(parse_instance(R"(<instance><domains><domain name="D">1</domain></domains>
        <variables><variable name="X" domain="E"/></variables><constraints/></instance>)")),
        ResolutionError);
}

TEST_CASE("count mismatches are diagnostics")
{
    auto m = parse_instance(R"(<instance><domains nbDomains="2"><domain name="D" nbValues="5">1..2</domain></domains>
        <variables nbVariables="1"><variable name="X" domain="D"/></variables><constraints nbConstraints="0"/></instance>)");
    auto r = resolve_references(m);
    CHECK(has_warning(r.diagnostics, "nbDomains"));
    CHECK(has_warning(r.diagnostics, "nbValues"));
}

TEST_CASE("global names are canonicalised")
{
    CHECK(canonical_global_name("AllDifferent") == "alldifferent");
    CHECK(canonical_global_name("weightedsum") == "weightedSum");
    CHECK_FALSE(canonical_global_name("circuit"));
    CHECK(supported_globals().size() == 13);
}

TEST_CASE("write and parse round trip")
{
    auto m = parse_instance(snippet);
    CHECK(parse_instance(write_instance(m)) == m);

    std::mt19937_64 rng{99};
    for (auto & family : testing::families())
        for (int i = 0; i < 40; ++i) {
            auto inst = testing::generate(family, rng);
            auto model = parse_instance(testing::to_xml(inst));
            auto text = write_instance(model);
            INFO(text);
            REQUIRE(parse_instance(text) == model);
            // scope indices are always in range
            for (auto & c : resolve_references(model).constraints)
                for (auto v : c.scope)
                    REQUIRE(v < model.variables.size());
        }
}
