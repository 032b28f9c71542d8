#include <xsolve/compiler.hh>

#include <fmt/core.h>

#include <algorithm>
#include <array>
#include <utility>

using namespace xsolve;

using std::move;
using std::nullopt;
using std::optional;
using std::pair;
using std::string;
using std::string_view;
using std::vector;

namespace
{
    constexpr std::array<pair<PropagatorKind, string_view>, 14> kind_names{{
        {PropagatorKind::table_supports, "table_supports"},
        {PropagatorKind::table_conflicts, "table_conflicts"},
        {PropagatorKind::expr_check, "expr_check"},
        {PropagatorKind::not_equal, "not_equal"},
        {PropagatorKind::linear_rel, "linear_rel"},
        {PropagatorKind::all_different, "all_different"},
        {PropagatorKind::among, "among"},
        {PropagatorKind::at_least, "at_least"},
        {PropagatorKind::at_most, "at_most"},
        {PropagatorKind::element, "element"},
        {PropagatorKind::global_cardinality, "global_cardinality"},
        {PropagatorKind::cumulative, "cumulative"},
        {PropagatorKind::lex_less, "lex_less"},
        {PropagatorKind::lex_less_eq, "lex_less_eq"},
    }};

    constexpr auto make_kind_list()
    {
        std::array<PropagatorKind, kind_names.size()> result{};
        for (std::size_t i = 0; i < kind_names.size(); ++i)
            result[i] = kind_names[i].first;
        return result;
    }

    constexpr auto kind_list = make_kind_list();

    constexpr std::array<pair<RelOp, string_view>, 6> relop_names{{
        {RelOp::eq, "eq"}, {RelOp::ne, "ne"}, {RelOp::ge, "ge"}, {RelOp::gt, "gt"}, {RelOp::le, "le"}, {RelOp::lt, "lt"}}};

    constexpr std::array<pair<string_view, string_view>, 13> signatures{{
        {"alldifferent", "[ X1 .. Xn ] (optional; defaults to the scope)"},
        {"among", "N [ X1 .. Xn ] [ v1 .. vk ]"},
        {"atleast", "k [ X1 .. Xn ] v"},
        {"atmost", "k [ X1 .. Xn ] v"},
        {"cumulative", "[ { origin duration end height } .. ] capacity, with end possibly nil and duration, height, capacity integers"},
        {"diffn", "[ { [ o1 .. od ] [ l1 .. ld ] } .. ]"},
        {"disjunctive", "[ { origin duration } .. ]"},
        {"element", "I [ T1 .. Tm ] V"},
        {"global_cardinality", "[ X1 .. Xn ] [ { v1 c1 } .. { vk ck } ]"},
        {"lex_less", "[ X1 .. Xn ] [ Y1 .. Yn ]"},
        {"lex_lesseq", "[ X1 .. Xn ] [ Y1 .. Yn ]"},
        {"not_all_equal", "[ X1 .. Xn ] (optional; defaults to the scope), n >= 2"},
        {"weightedSum", "[ { c1 X1 } .. { cn Xn } ] <relop/> k"},
    }};

    struct LinearForm
    {
        vector<pair<std::size_t, Integer>> terms;
        Integer constant = 0;
    };

    auto scaled(LinearForm f, Integer k) -> optional<LinearForm>
    {
        for (auto & [_, c] : f.terms)
            if (__builtin_mul_overflow(c, k, &c))
                return nullopt;
        if (__builtin_mul_overflow(f.constant, k, &f.constant))
            return nullopt;
        return f;
    }

    auto combined(LinearForm a, const LinearForm & b, Integer sign) -> optional<LinearForm>
    {
        for (auto & [v, c] : b.terms) {
            Integer add = 0;
            if (__builtin_mul_overflow(c, sign, &add))
                return nullopt;
            auto it = std::find_if(a.terms.begin(), a.terms.end(), [&](auto & t) { return t.first == v; });
            if (it == a.terms.end())
                a.terms.emplace_back(v, add);
            else if (__builtin_add_overflow(it->second, add, &it->second))
                return nullopt;
        }
        Integer k = 0;
        if (__builtin_mul_overflow(b.constant, sign, &k) || __builtin_add_overflow(a.constant, k, &a.constant))
            return nullopt;
        return a;
    }

    auto linear_form(const Expr & e) -> optional<LinearForm>
    {
        switch (e.kind) {
            case Expr::Kind::literal: return LinearForm{{}, e.value};
            case Expr::Kind::var: return LinearForm{{{static_cast<std::size_t>(e.value), 1}}, 0};
            case Expr::Kind::param: return nullopt;
            case Expr::Kind::apply: break;
        }
        switch (e.op) {
            case Operator::neg: {
                auto f = linear_form(e.children[0]);
                return f ? scaled(*f, -1) : nullopt;
            }
            case Operator::add:
            case Operator::sub: {
                auto a = linear_form(e.children[0]), b = linear_form(e.children[1]);
                if (! a || ! b)
                    return nullopt;
                return combined(*a, *b, e.op == Operator::add ? 1 : -1);
            }
            case Operator::mul: {
                auto a = linear_form(e.children[0]), b = linear_form(e.children[1]);
                if (! a || ! b)
                    return nullopt;
                if (a->terms.empty())
                    return scaled(*b, a->constant);
                if (b->terms.empty())
                    return scaled(*a, b->constant);
                return nullopt;
            }
            default:
                return nullopt;
        }
    }

    auto relop_of(Operator op) -> optional<RelOp>
    {
        switch (op) {
            case Operator::eq: return RelOp::eq;
            case Operator::ne: return RelOp::ne;
            case Operator::ge: return RelOp::ge;
            case Operator::gt: return RelOp::gt;
            case Operator::le: return RelOp::le;
            case Operator::lt: return RelOp::lt;
            default: return nullopt;
        }
    }

    [[noreturn]] void bad_params(const ResolvedConstraint & c, string_view global, string_view detail)
    {
        throw CompileError(fmt::format("constraint '{}': malformed parameters for {} ({}); expected {}",
            c.name, global, detail, global_signature(global)));
    }

    class GlobalCompiler
    {
    public:
        GlobalCompiler(const ResolvedConstraint & c, string_view global, Problem & problem, const CompileOptions & options) :
            _c(c), _global(global), _problem(problem), _options(options)
        {
        }

        auto compile() -> vector<PropagatorSpec>
        {
            if (_global == "alldifferent")
                return all_different();
            if (_global == "among")
                return among();
            if (_global == "atleast" || _global == "atmost")
                return at_least_or_most();
            if (_global == "cumulative")
                return cumulative();
            if (_global == "diffn")
                return diffn();
            if (_global == "disjunctive")
                return disjunctive();
            if (_global == "element")
                return element();
            if (_global == "global_cardinality")
                return global_cardinality();
            if (_global == "lex_less" || _global == "lex_lesseq")
                return lex();
            if (_global == "not_all_equal")
                return not_all_equal();
            if (_global == "weightedSum")
                return weighted_sum();

            string supported;
            for (auto n : supported_globals())
                supported += (supported.empty() ? "" : ", ") + string{n};
            throw CompileError(fmt::format("constraint '{}': unsupported global '{}' (supported: {})", _c.name, _global, supported));
        }

    private:
        const ResolvedConstraint & _c;
        string_view _global;
        Problem & _problem;
        const CompileOptions & _options;

        [[noreturn]] void fail(string_view detail) const
        {
            bad_params(_c, _global, detail);
        }

        auto spec(PropagatorKind kind, vector<std::size_t> scope, PropagatorData data = {}) const -> PropagatorSpec
        {
            return PropagatorSpec{kind, move(scope), move(data), _c.name};
        }

        auto params(std::size_t expected) const -> const vector<Param> &
        {
            if (! _c.params)
                fail("missing <parameters>");
            if (_c.params->size() != expected)
                fail(fmt::format("{} top-level item(s) where {} expected", _c.params->size(), expected));
            return *_c.params;
        }

        auto list(const Param & p) const -> const vector<Param> &
        {
            if (p.kind != Param::Kind::list)
                fail(fmt::format("'{}' is not a [ ] list", to_string(p)));
            return p.items;
        }

        auto record(const Param & p, std::size_t size) const -> const vector<Param> &
        {
            if (p.kind != Param::Kind::record || p.items.size() != size)
                fail(fmt::format("'{}' is not a {{ }} record of {} item(s)", to_string(p), size));
            return p.items;
        }

        auto integer(const Param & p) const -> Integer
        {
            if (p.kind != Param::Kind::integer)
                fail(fmt::format("'{}' is not an integer", to_string(p)));
            return p.value;
        }

        auto is_term(const Param & p) const -> bool
        {
            return p.kind == Param::Kind::integer || p.kind == Param::Kind::variable;
        }

        // variable index, with integers mapped to fixed auxiliaries
        auto operand(const Param & p) const -> std::size_t
        {
            if (p.kind == Param::Kind::variable)
                return static_cast<std::size_t>(p.value);
            if (p.kind == Param::Kind::integer)
                return _problem.constant(p.value);
            fail(fmt::format("'{}' is neither a variable nor an integer", to_string(p)));
        }

        auto operands(const vector<Param> & items) const -> vector<std::size_t>
        {
            vector<std::size_t> result;
            for (auto & p : items)
                result.push_back(operand(p));
            return result;
        }

        auto term(const Param & p) const -> Expr
        {
            if (p.kind == Param::Kind::variable)
                return Expr::var(static_cast<std::size_t>(p.value));
            if (p.kind == Param::Kind::integer)
                return Expr::literal(p.value);
            fail(fmt::format("'{}' is neither a variable nor an integer", to_string(p)));
        }

        // the optional single list parameter of alldifferent and not_all_equal
        auto scope_or_list() const -> vector<std::size_t>
        {
            if (! _c.params || _c.params->empty())
                return _c.scope;
            return operands(list(params(1)[0]));
        }

        auto all_different() const -> vector<PropagatorSpec>
        {
            auto vars = scope_or_list();
            if (_options.alldifferent == AllDifferentLowering::dedicated)
                return {spec(PropagatorKind::all_different, vars)};

            vector<PropagatorSpec> result;
            for (std::size_t i = 0; i < vars.size(); ++i)
                for (std::size_t j = i + 1; j < vars.size(); ++j)
                    result.push_back(spec(PropagatorKind::not_equal, {vars[i], vars[j]}));
            return result;
        }

        auto among() const -> vector<PropagatorSpec>
        {
            auto & p = params(3);
            auto count = operand(p[0]);
            auto scope = operands(list(p[1]));
            vector<Integer> values;
            for (auto & v : list(p[2]))
                values.push_back(integer(v));
            scope.push_back(count);
            return {spec(PropagatorKind::among, move(scope), CountData{IntegerSet::from_values(move(values)), 0})};
        }

        auto at_least_or_most() const -> vector<PropagatorSpec>
        {
            auto & p = params(3);
            auto bound = integer(p[0]);
            auto scope = operands(list(p[1]));
            auto value = integer(p[2]);
            return {spec(_global == "atleast" ? PropagatorKind::at_least : PropagatorKind::at_most, move(scope),
                CountData{IntegerSet::singleton(value), bound})};
        }

        auto cumulative() const -> vector<PropagatorSpec>
        {
            auto & p = params(2);
            CumulativeData data;
            data.capacity = integer(p[1]);
            vector<std::size_t> origins;
            vector<PropagatorSpec> ends;
            for (auto & t : list(p[0])) {
                if (t.kind != Param::Kind::record || (t.items.size() != 4 && t.items.size() != 3))
                    fail(fmt::format("task '{}' is not a {{ origin duration end height }} record", to_string(t)));
                auto & f = t.items;
                auto duration = integer(f[1]);
                auto height = integer(f.back());
                if (duration < 0 || height < 0)
                    fail("task durations and heights must be nonnegative");
                auto origin = operand(f[0]);
                origins.push_back(origin);
                data.durations.push_back(duration);
                data.heights.push_back(height);
                if (f.size() == 4 && f[2].kind != Param::Kind::nil) {
                    // end = origin + duration
                    auto end = operand(f[2]);
                    Integer minus_duration = 0;
                    if (__builtin_sub_overflow(Integer{0}, duration, &minus_duration))
                        fail("task duration out of range");
                    if (end == origin)
                        ends.push_back(spec(PropagatorKind::linear_rel, {origin}, LinearData{{0}, RelOp::eq, minus_duration}));
                    else
                        ends.push_back(spec(PropagatorKind::linear_rel, {origin, end}, LinearData{{1, -1}, RelOp::eq, minus_duration}));
                }
            }
            vector<PropagatorSpec> result{spec(PropagatorKind::cumulative, move(origins), move(data))};
            result.insert(result.end(), ends.begin(), ends.end());
            return result;
        }

        auto check(Expr e) const -> PropagatorSpec
        {
            GroundExpr g{move(e)};
            auto scope = g.variables();
            return spec(PropagatorKind::expr_check, move(scope), ExprData{move(g)});
        }

        // le(add(a, la), b): a finishes before b starts
        static auto before(const Expr & a, const Expr & la, const Expr & b) -> Expr
        {
            return Expr::apply(Operator::le, {Expr::apply(Operator::add, {a, la}), b});
        }

        static auto any_of(vector<Expr> cases) -> Expr
        {
            auto e = move(cases.back());
            cases.pop_back();
            while (! cases.empty()) {
                e = Expr::apply(Operator::or_, {move(cases.back()), move(e)});
                cases.pop_back();
            }
            return e;
        }

        auto disjunctive() const -> vector<PropagatorSpec>
        {
            auto & p = params(1);
            vector<pair<Expr, Expr>> tasks;
            for (auto & t : list(p[0])) {
                auto & f = record(t, 2);
                tasks.emplace_back(term(f[0]), term(f[1]));
            }
            vector<PropagatorSpec> result;
            for (std::size_t i = 0; i < tasks.size(); ++i)
                for (std::size_t j = i + 1; j < tasks.size(); ++j)
                    result.push_back(check(any_of({before(tasks[i].first, tasks[i].second, tasks[j].first),
                        before(tasks[j].first, tasks[j].second, tasks[i].first)})));
            return result;
        }

        auto diffn() const -> vector<PropagatorSpec>
        {
            auto & p = params(1);
            struct Box
            {
                vector<Expr> origins, lengths;
            };
            vector<Box> boxes;
            for (auto & b : list(p[0])) {
                auto & f = record(b, 2);
                Box box;
                for (auto & o : list(f[0]))
                    box.origins.push_back(term(o));
                for (auto & l : list(f[1]))
                    box.lengths.push_back(term(l));
                if (box.origins.size() != box.lengths.size() || box.origins.empty())
                    fail("each box needs as many lengths as origins, at least one");
                if (! boxes.empty() && boxes.front().origins.size() != box.origins.size())
                    fail("all boxes must have the same number of dimensions");
                boxes.push_back(move(box));
            }
            vector<PropagatorSpec> result;
            for (std::size_t i = 0; i < boxes.size(); ++i)
                for (std::size_t j = i + 1; j < boxes.size(); ++j) {
                    vector<Expr> cases;
                    for (std::size_t d = 0; d < boxes[i].origins.size(); ++d) {
                        cases.push_back(before(boxes[i].origins[d], boxes[i].lengths[d], boxes[j].origins[d]));
                        cases.push_back(before(boxes[j].origins[d], boxes[j].lengths[d], boxes[i].origins[d]));
                    }
                    result.push_back(check(any_of(move(cases))));
                }
            return result;
        }

        auto element() const -> vector<PropagatorSpec>
        {
            auto & p = params(3);
            vector<std::size_t> scope{operand(p[0])};
            auto table = operands(list(p[1]));
            if (table.empty())
                fail("empty table");
            scope.insert(scope.end(), table.begin(), table.end());
            scope.push_back(operand(p[2]));
            return {spec(PropagatorKind::element, move(scope), ElementData{_options.element_base})};
        }

        auto global_cardinality() const -> vector<PropagatorSpec>
        {
            auto & p = params(2);
            auto scope = operands(list(p[0]));
            CardinalityData data;
            vector<std::size_t> counts;
            for (auto & entry : list(p[1])) {
                auto & f = record(entry, 2);
                auto v = integer(f[0]);
                if (std::find(data.values.begin(), data.values.end(), v) != data.values.end())
                    fail(fmt::format("value {} is counted twice", v));
                data.values.push_back(v);
                counts.push_back(operand(f[1]));
            }
            scope.insert(scope.end(), counts.begin(), counts.end());
            return {spec(PropagatorKind::global_cardinality, move(scope), move(data))};
        }

        auto lex() const -> vector<PropagatorSpec>
        {
            auto & p = params(2);
            auto xs = operands(list(p[0])), ys = operands(list(p[1]));
            if (xs.size() != ys.size())
                fail("vectors of different lengths");
            xs.insert(xs.end(), ys.begin(), ys.end());
            return {spec(_global == "lex_less" ? PropagatorKind::lex_less : PropagatorKind::lex_less_eq, move(xs))};
        }

        auto not_all_equal() const -> vector<PropagatorSpec>
        {
            auto vars = scope_or_list();
            if (vars.size() < 2)
                throw CompileError(fmt::format("constraint '{}': not_all_equal needs at least 2 variables, got {}", _c.name, vars.size()));
            vector<Expr> cases;
            for (std::size_t i = 1; i < vars.size(); ++i)
                cases.push_back(Expr::apply(Operator::ne, {Expr::var(vars[0]), Expr::var(vars[i])}));
            return {check(any_of(move(cases)))};
        }

        auto weighted_sum() const -> vector<PropagatorSpec>
        {
            auto & p = params(3);
            if (p[1].kind != Param::Kind::relop)
                fail(fmt::format("'{}' is not a relational element", to_string(p[1])));
            auto op = *relop_from_name(p[1].name);
            auto constant = integer(p[2]);

            LinearForm form;
            for (auto & entry : list(p[0])) {
                auto & f = record(entry, 2);
                auto coeff = integer(f[0]);
                optional<LinearForm> f2;
                if (f[1].kind == Param::Kind::integer) {
                    Integer product = 0;
                    if (__builtin_mul_overflow(coeff, f[1].value, &product))
                        fail("coefficient overflow");
                    f2 = combined(form, LinearForm{{}, product}, 1);
                }
                else if (f[1].kind == Param::Kind::variable)
                    f2 = combined(form, LinearForm{{{static_cast<std::size_t>(f[1].value), coeff}}, 0}, 1);
                else
                    fail(fmt::format("'{}' is neither a variable nor an integer", to_string(f[1])));
                if (! f2)
                    fail("coefficient overflow");
                form = *f2;
            }
            Integer rhs = 0;
            if (__builtin_sub_overflow(constant, form.constant, &rhs))
                fail("constant overflow");

            LinearData data{{}, op, rhs};
            vector<std::size_t> scope;
            for (auto & [v, c] : form.terms) {
                scope.push_back(v);
                data.coeffs.push_back(c);
            }
            return {spec(PropagatorKind::linear_rel, move(scope), move(data))};
        }
    };
}

auto xsolve::kind_name(PropagatorKind kind) -> string_view
{
    return kind_names[static_cast<std::size_t>(kind)].second;
}

auto xsolve::all_propagator_kinds() -> std::span<const PropagatorKind>
{
    return kind_list;
}

auto xsolve::relop_name(RelOp op) -> string_view
{
    return relop_names[static_cast<std::size_t>(op)].second;
}

auto xsolve::relop_from_name(string_view name) -> optional<RelOp>
{
    for (auto & [op, n] : relop_names)
        if (n == name)
            return op;
    return nullopt;
}

auto xsolve::holds(RelOp op, Integer lhs, Integer rhs) -> bool
{
    switch (op) {
        case RelOp::eq: return lhs == rhs;
        case RelOp::ne: return lhs != rhs;
        case RelOp::ge: return lhs >= rhs;
        case RelOp::gt: return lhs > rhs;
        case RelOp::le: return lhs <= rhs;
        case RelOp::lt: return lhs < rhs;
    }
    return false;
}

auto xsolve::global_signature(string_view global) -> string_view
{
    for (auto & [name, sig] : signatures)
        if (name == global)
            return sig;
    return "a supported global constraint";
}

auto Problem::constant(Integer v) -> std::size_t
{
    auto it = _constants.find(v);
    if (it != _constants.end())
        return it->second;
    auto index = domains.size();
    domains.push_back(IntegerSet::singleton(v));
    _constants.emplace(v, index);
    return index;
}

auto xsolve::compile_extension(const ResolvedConstraint & constraint, const RelationDef & relation) -> PropagatorSpec
{
    return PropagatorSpec{
        relation.semantics == Semantics::supports ? PropagatorKind::table_supports : PropagatorKind::table_conflicts,
        constraint.scope, TableData{relation.tuples}, constraint.name};
}

auto xsolve::compile_intension(const ResolvedConstraint & constraint, const PredicateDef & predicate) -> PropagatorSpec
{
    if (! constraint.params)
        throw CompileError(fmt::format("constraint '{}' has no parameters for predicate '{}'", constraint.name, predicate.name));

    optional<GroundExpr> ground;
    try {
        ground.emplace(substitute(predicate, *constraint.params));
    }
    catch (const ArityError & e) {
        throw CompileError(fmt::format("constraint '{}': {}", constraint.name, e.what()));
    }

    auto & root = ground->root();
    if (root.kind == Expr::Kind::apply) {
        if (auto op = relop_of(root.op)) {
            auto lhs = linear_form(root.children[0]), rhs = linear_form(root.children[1]);
            optional<LinearForm> diff;
            if (lhs && rhs)
                diff = combined(*lhs, *rhs, -1);
            if (diff) {
                std::erase_if(diff->terms, [](auto & t) { return t.second == 0; });
                Integer constant = 0;
                if (! diff->terms.empty() && ! __builtin_sub_overflow(Integer{0}, diff->constant, &constant)) {
                    auto & t = diff->terms;
                    if (*op == RelOp::ne && t.size() == 2 && constant == 0 && t[0].second == -t[1].second
                        && (t[0].second == 1 || t[0].second == -1))
                        return PropagatorSpec{PropagatorKind::not_equal, {t[0].first, t[1].first}, {}, constraint.name};

                    LinearData data{{}, *op, constant};
                    vector<std::size_t> scope;
                    for (auto & [v, c] : t) {
                        scope.push_back(v);
                        data.coeffs.push_back(c);
                    }
                    return PropagatorSpec{PropagatorKind::linear_rel, move(scope), move(data), constraint.name};
                }
            }
        }
    }

    auto scope = ground->variables();
    return PropagatorSpec{PropagatorKind::expr_check, move(scope), ExprData{move(*ground)}, constraint.name};
}

auto xsolve::compile_global(const ResolvedConstraint & constraint, Problem & problem, const CompileOptions & options) -> vector<PropagatorSpec>
{
    auto & global = std::get<GlobalRef>(constraint.reference).name;
    return GlobalCompiler{constraint, global, problem, options}.compile();
}

auto xsolve::compile_instance(const ResolvedInstance & instance, const CompileOptions & options) -> Problem
{
    if (options.element_base != 0 && options.element_base != 1)
        throw CompileError(fmt::format("element index base must be 0 or 1, got {}", options.element_base));

    Problem problem;
    for (auto & v : instance.variables) {
        problem.domains.push_back(v.domain);
        problem.variable_names.push_back(v.name);
    }

    for (auto & c : instance.constraints) {
        std::visit([&](auto & ref) {
            using R = std::decay_t<decltype(ref)>;
            if constexpr (std::is_same_v<R, RelationRef>)
                problem.propagators.push_back(compile_extension(c, instance.relations[ref.index]));
            else if constexpr (std::is_same_v<R, PredicateRef>)
                problem.propagators.push_back(compile_intension(c, instance.predicates[ref.index]));
            else
                for (auto & s : compile_global(c, problem, options))
                    problem.propagators.push_back(move(s));
        }, c.reference);
    }
    return problem;
}
