#ifndef XSOLVE_XCSP_MODEL_HH
#define XSOLVE_XCSP_MODEL_HH

#include <xsolve/expr.hh>
#include <xsolve/integer_set.hh>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace xsolve
{
    using Tuple = std::vector<Integer>;

    struct DomainDef
    {
        std::string name;
        IntegerSet values;
        std::optional<std::uint64_t> declared_count;

        auto operator==(const DomainDef &) const -> bool = default;
    };

    struct VariableDef
    {
        std::string name;
        std::string domain_ref;

        auto operator==(const VariableDef &) const -> bool = default;
    };

    enum class Semantics
    {
        supports,
        conflicts
    };

    struct RelationDef
    {
        std::string name;
        std::size_t arity = 0;
        Semantics semantics = Semantics::supports;
        std::vector<Tuple> tuples;
        std::optional<std::size_t> declared_count;

        auto operator==(const RelationDef &) const -> bool = default;
    };

    struct PredicateDef
    {
        std::string name;
        std::vector<std::string> formal_params;
        Expr body;

        auto operator==(const PredicateDef &) const -> bool = default;
    };

    /**
     * One token of a constraint's <parameters> block. Globals use the
     * bracketed list and braced record forms, weightedSum additionally uses
     * an empty relational element such as <le/>.
     */
    struct Param
    {
        enum class Kind
        {
            integer,
            identifier, // unresolved name, as parsed
            variable,   // resolved: value holds the variable index
            nil,
            relop,
            list,
            record
        };

        Kind kind = Kind::integer;
        Integer value = 0;
        std::string name;
        std::vector<Param> items;

        static auto integer(Integer v) -> Param;
        static auto identifier(std::string name) -> Param;

        auto operator==(const Param &) const -> bool = default;
    };

    struct ConstraintDef
    {
        std::string name;
        std::size_t arity = 0;
        std::vector<std::string> scope;
        std::string reference;
        std::optional<std::vector<Param>> effective_params;

        auto operator==(const ConstraintDef &) const -> bool = default;
    };

    struct SectionCounts
    {
        std::optional<std::size_t> domains, variables, relations, predicates, constraints;

        auto operator==(const SectionCounts &) const -> bool = default;
    };

    struct InstanceModel
    {
        std::string name;
        std::vector<DomainDef> domains;
        std::vector<VariableDef> variables;
        std::vector<RelationDef> relations;
        std::vector<PredicateDef> predicates;
        std::vector<ConstraintDef> constraints;
        SectionCounts declared;

        // not part of structural equality
        std::vector<std::string> warnings;

        auto operator==(const InstanceModel & other) const -> bool;
    };

    struct RelationRef
    {
        std::size_t index;
        auto operator==(const RelationRef &) const -> bool = default;
    };

    struct PredicateRef
    {
        std::size_t index;
        auto operator==(const PredicateRef &) const -> bool = default;
    };

    struct GlobalRef
    {
        std::string name;
        auto operator==(const GlobalRef &) const -> bool = default;
    };

    using ConstraintReference = std::variant<RelationRef, PredicateRef, GlobalRef>;

    struct ResolvedVariable
    {
        std::string name;
        IntegerSet domain;
    };

    struct ResolvedConstraint
    {
        std::string name;
        std::vector<std::size_t> scope;
        ConstraintReference reference;
        // identifiers resolved to Param::Kind::variable
        std::optional<std::vector<Param>> params;
    };

    struct ResolvedInstance
    {
        std::vector<ResolvedVariable> variables;
        std::vector<RelationDef> relations;
        std::vector<PredicateDef> predicates;
        std::vector<ResolvedConstraint> constraints;
        std::vector<std::string> diagnostics;
    };

    auto parse_instance(std::string_view document) -> InstanceModel;
    auto parse_tuples(std::string_view text, std::size_t arity) -> std::vector<Tuple>;

    /// Tokenises the text and empty-element children of a <parameters> block.
    auto parse_param_text(std::string_view text) -> std::vector<Param>;

    auto resolve_references(const InstanceModel & model) -> ResolvedInstance;

    /// Canonical fully-tagged XCSP 2.1 text; parse_instance(write_instance(m)) == m.
    auto write_instance(const InstanceModel & model) -> std::string;

    auto to_string(const Param & p) -> std::string;
    auto to_string(const std::vector<Param> & params) -> std::string;

    /// Canonical names of supported globals, as used in the reference attribute after "global:".
    auto supported_globals() -> std::span<const std::string_view>;

    /// Case-insensitive lookup returning the canonical spelling.
    auto canonical_global_name(std::string_view name) -> std::optional<std::string_view>;

    /// Substitutes a predicate's formals by flat effective params (integers or resolved variables).
    auto substitute(const PredicateDef & pred, const std::vector<Param> & effective) -> GroundExpr;
}

#endif
