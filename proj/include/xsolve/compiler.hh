#ifndef XSOLVE_COMPILER_HH
#define XSOLVE_COMPILER_HH

#include <xsolve/expr.hh>
#include <xsolve/integer_set.hh>
#include <xsolve/xcsp_model.hh>

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace xsolve
{
    enum class PropagatorKind
    {
        table_supports,
        table_conflicts,
        expr_check,
        not_equal,
        linear_rel,
        all_different,
        among,
        at_least,
        at_most,
        element,
        global_cardinality,
        cumulative,
        lex_less,
        lex_less_eq
    };

    auto kind_name(PropagatorKind kind) -> std::string_view;
    auto all_propagator_kinds() -> std::span<const PropagatorKind>;

    enum class RelOp
    {
        eq,
        ne,
        ge,
        gt,
        le,
        lt
    };

    auto relop_name(RelOp op) -> std::string_view;
    auto relop_from_name(std::string_view name) -> std::optional<RelOp>;
    auto holds(RelOp op, Integer lhs, Integer rhs) -> bool;

    struct TableData
    {
        std::vector<Tuple> tuples;
        auto operator==(const TableData &) const -> bool = default;
    };

    struct ExprData
    {
        GroundExpr expr;
        auto operator==(const ExprData &) const -> bool = default;
    };

    /// sum(coeffs[i] * scope[i]) op constant
    struct LinearData
    {
        std::vector<Integer> coeffs;
        RelOp op = RelOp::eq;
        Integer constant = 0;
        auto operator==(const LinearData &) const -> bool = default;
    };

    /**
     * Counts the scope variables taking a value in `values`. For among the
     * count is the last scope variable; at_least requires count >= bound
     * and at_most requires count <= bound.
     */
    struct CountData
    {
        IntegerSet values;
        Integer bound = 0;
        auto operator==(const CountData &) const -> bool = default;
    };

    /// scope is [index, table_1 .. table_m, value]; table position j is index value base + j - 1.
    struct ElementData
    {
        Integer base = 1;
        auto operator==(const ElementData &) const -> bool = default;
    };

    /// scope is the counted variables followed by one count variable per entry of values.
    struct CardinalityData
    {
        std::vector<Integer> values;
        auto operator==(const CardinalityData &) const -> bool = default;
    };

    /// scope holds the task origins.
    struct CumulativeData
    {
        std::vector<Integer> durations;
        std::vector<Integer> heights;
        Integer capacity = 0;
        auto operator==(const CumulativeData &) const -> bool = default;
    };

    using PropagatorData = std::variant<std::monostate, TableData, ExprData, LinearData, CountData, ElementData, CardinalityData, CumulativeData>;

    struct PropagatorSpec
    {
        PropagatorKind kind = PropagatorKind::expr_check;
        std::vector<std::size_t> scope;
        PropagatorData data;
        // name of the constraint this came from
        std::string origin;

        auto operator==(const PropagatorSpec &) const -> bool = default;
    };

    auto to_debug_string(const PropagatorSpec & spec) -> std::string;
    auto spec_from_debug_string(std::string_view text) -> PropagatorSpec;

    /**
     * The solver's view of an instance. Variables past variable_names.size()
     * are fixed auxiliaries standing for integer constants inside globals,
     * and are never reported.
     */
    struct Problem
    {
        std::vector<IntegerSet> domains;
        std::vector<std::string> variable_names;
        std::vector<PropagatorSpec> propagators;

        [[nodiscard]] auto output_count() const -> std::size_t { return variable_names.size(); }

        /// Index of an auxiliary variable fixed to v, created on first use.
        auto constant(Integer v) -> std::size_t;

    private:
        std::map<Integer, std::size_t> _constants;
    };

    enum class AllDifferentLowering
    {
        dedicated,
        pairwise
    };

    struct CompileOptions
    {
        Integer element_base = 1;
        AllDifferentLowering alldifferent = AllDifferentLowering::dedicated;
    };

    constexpr Integer default_element_base = 1;

    auto compile_instance(const ResolvedInstance & instance, const CompileOptions & options = {}) -> Problem;

    auto compile_extension(const ResolvedConstraint & constraint, const RelationDef & relation) -> PropagatorSpec;
    auto compile_intension(const ResolvedConstraint & constraint, const PredicateDef & predicate) -> PropagatorSpec;
    auto compile_global(const ResolvedConstraint & constraint, Problem & problem, const CompileOptions & options = {}) -> std::vector<PropagatorSpec>;

    /// The accepted <parameters> grammar for a global, as quoted in error messages.
    auto global_signature(std::string_view global) -> std::string_view;
}

#endif
