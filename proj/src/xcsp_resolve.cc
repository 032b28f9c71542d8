#include <xsolve/xcsp_model.hh>

#include <fmt/core.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <map>

using namespace xsolve;

using std::move;
using std::optional;
using std::string;
using std::string_view;
using std::vector;

namespace
{
    constexpr std::array<string_view, 13> global_names{
        "alldifferent", "among", "atleast", "atmost", "cumulative", "diffn", "disjunctive",
        "element", "global_cardinality", "lex_less", "lex_lesseq", "not_all_equal", "weightedSum"};

    auto lowercase(string_view s) -> string
    {
        string result{s};
        std::transform(result.begin(), result.end(), result.begin(), [](unsigned char c) { return std::tolower(c); });
        return result;
    }

    auto supported_list() -> string
    {
        string result;
        for (auto n : global_names) {
            if (! result.empty())
                result += ", ";
            result += n;
        }
        return result;
    }

    class Resolver
    {
    public:
        explicit Resolver(const InstanceModel & model) :
            _model(model)
        {
        }

        auto resolve() -> ResolvedInstance
        {
            _result.diagnostics = _model.warnings;
            check_counts();

            std::map<string, const DomainDef *> domains;
            for (auto & d : _model.domains)
                domains.emplace(d.name, &d);

            for (auto & v : _model.variables) {
                auto d = domains.find(v.domain_ref);
                if (d == domains.end())
                    throw ResolutionError(fmt::format("variable '{}' refers to undeclared domain '{}'", v.name, v.domain_ref));
                _variable_index.emplace(v.name, _result.variables.size());
                _result.variables.push_back({v.name, d->second->values});
            }

            for (std::size_t i = 0; i < _model.relations.size(); ++i)
                _references.emplace(_model.relations[i].name, RelationRef{i});
            for (std::size_t i = 0; i < _model.predicates.size(); ++i)
                _references.emplace(_model.predicates[i].name, PredicateRef{i});
            _result.relations = _model.relations;
            _result.predicates = _model.predicates;

            for (auto & c : _model.constraints)
                _result.constraints.push_back(resolve_constraint(c));

            return move(_result);
        }

    private:
        const InstanceModel & _model;
        ResolvedInstance _result;
        std::map<string, std::size_t> _variable_index;
        std::map<string, ConstraintReference> _references;

        void mismatch(string_view what, std::size_t declared, std::size_t actual)
        {
            if (declared != actual)
                _result.diagnostics.push_back(fmt::format("{} declares {} but has {}", what, declared, actual));
        }

        void check_counts()
        {
            auto & d = _model.declared;
            if (d.domains)
                mismatch("<domains> nbDomains", *d.domains, _model.domains.size());
            if (d.variables)
                mismatch("<variables> nbVariables", *d.variables, _model.variables.size());
            if (d.relations)
                mismatch("<relations> nbRelations", *d.relations, _model.relations.size());
            if (d.predicates)
                mismatch("<predicates> nbPredicates", *d.predicates, _model.predicates.size());
            if (d.constraints)
                mismatch("<constraints> nbConstraints", *d.constraints, _model.constraints.size());
            for (auto & dom : _model.domains)
                if (dom.declared_count && *dom.declared_count != dom.values.size())
                    _result.diagnostics.push_back(fmt::format("domain '{}' declares nbValues={} but has {} value(s)",
                        dom.name, *dom.declared_count, dom.values.size()));
            for (auto & r : _model.relations)
                if (r.declared_count)
                    mismatch(fmt::format("relation '{}' nbTuples", r.name), *r.declared_count, r.tuples.size());
        }

        auto resolve_param(const ConstraintDef & c, const Param & p) -> Param
        {
            switch (p.kind) {
                case Param::Kind::identifier: {
                    auto v = _variable_index.find(p.name);
                    if (v == _variable_index.end())
                        throw ResolutionError(fmt::format("constraint '{}': parameter '{}' is not a declared variable", c.name, p.name));
                    if (std::find(c.scope.begin(), c.scope.end(), p.name) == c.scope.end())
                        _result.diagnostics.push_back(fmt::format("constraint '{}': parameter variable '{}' is not in its scope", c.name, p.name));
                    Param r = p;
                    r.kind = Param::Kind::variable;
                    r.value = static_cast<Integer>(v->second);
                    return r;
                }
                case Param::Kind::list:
                case Param::Kind::record: {
                    Param r = p;
                    for (auto & item : r.items)
                        item = resolve_param(c, item);
                    return r;
                }
                default:
                    return p;
            }
        }

        auto resolve_constraint(const ConstraintDef & c) -> ResolvedConstraint
        {
            ResolvedConstraint r;
            r.name = c.name;

            if (c.scope.size() != c.arity)
                throw ResolutionError(fmt::format("constraint '{}' has arity {} but a scope of {} variable(s)", c.name, c.arity, c.scope.size()));
            for (auto & s : c.scope) {
                auto v = _variable_index.find(s);
                if (v == _variable_index.end())
                    throw ResolutionError(fmt::format("constraint '{}': scope names undeclared variable '{}'", c.name, s));
                if (std::find(r.scope.begin(), r.scope.end(), v->second) != r.scope.end())
                    throw ResolutionError(fmt::format("constraint '{}': variable '{}' appears twice in its scope", c.name, s));
                r.scope.push_back(v->second);
            }

            if (c.effective_params) {
                vector<Param> params;
                for (auto & p : *c.effective_params)
                    params.push_back(resolve_param(c, p));
                r.params = move(params);
            }

            if (c.reference.starts_with("global:")) {
                auto name = string_view{c.reference}.substr(7);
                auto canonical = canonical_global_name(name);
                if (! canonical)
                    throw ResolutionError(fmt::format("constraint '{}': unsupported global constraint '{}' (supported: {})",
                        c.name, name, supported_list()));
                r.reference = GlobalRef{string{*canonical}};
                return r;
            }

            auto ref = _references.find(c.reference);
            if (ref == _references.end())
                throw ResolutionError(fmt::format("constraint '{}' references undeclared relation or predicate '{}'", c.name, c.reference));
            r.reference = ref->second;

            if (auto rel = std::get_if<RelationRef>(&r.reference)) {
                auto & relation = _model.relations[rel->index];
                if (relation.arity != c.arity)
                    throw ResolutionError(fmt::format("constraint '{}' has arity {} but relation '{}' has arity {}",
                        c.name, c.arity, relation.name, relation.arity));
                if (r.params)
                    _result.diagnostics.push_back(fmt::format("constraint '{}': ignoring <parameters> on a relation reference", c.name));
            }
            else {
                auto & pred = _model.predicates[std::get<PredicateRef>(r.reference).index];
                if (! r.params)
                    throw ResolutionError(fmt::format("constraint '{}' references predicate '{}' without <parameters>", c.name, pred.name));
                for (auto & p : *r.params)
                    if (p.kind != Param::Kind::integer && p.kind != Param::Kind::variable)
                        throw ResolutionError(fmt::format("constraint '{}': predicate parameters must be variables or integers", c.name));
                if (r.params->size() != pred.formal_params.size())
                    throw ResolutionError(fmt::format("constraint '{}' passes {} parameter(s) to predicate '{}' which takes {}",
                        c.name, r.params->size(), pred.name, pred.formal_params.size()));
            }
            return r;
        }
    };
}

auto xsolve::supported_globals() -> std::span<const string_view>
{
    return global_names;
}

auto xsolve::canonical_global_name(string_view name) -> optional<string_view>
{
    auto lower = lowercase(name);
    for (auto n : global_names)
        if (lowercase(n) == lower)
            return n;
    return std::nullopt;
}

auto xsolve::resolve_references(const InstanceModel & model) -> ResolvedInstance
{
    return Resolver{model}.resolve();
}

auto xsolve::substitute(const PredicateDef & pred, const vector<Param> & effective) -> GroundExpr
{
    vector<Operand> operands;
    operands.reserve(effective.size());
    for (auto & p : effective) {
        if (p.kind == Param::Kind::variable)
            operands.emplace_back(VarRef{static_cast<std::size_t>(p.value)});
        else if (p.kind == Param::Kind::integer)
            operands.emplace_back(p.value);
        else
            throw ArityError(fmt::format("predicate '{}': parameter '{}' is neither a variable nor an integer", pred.name, to_string(p)));
    }
    return substitute(pred.body, pred.formal_params.size(), operands);
}
