#include <xsolve/engine.hh>

#include <algorithm>
#include <set>
#include <stdexcept>

using namespace xsolve;

using std::nullopt;
using std::optional;
using std::size_t;
using std::string;
using std::string_view;
using std::vector;

namespace
{
    using Wide = __int128;

    struct Malformed : std::runtime_error
    {
        Malformed() :
            std::runtime_error("malformed parameters")
        {
        }
    };

    class GlobalChecker
    {
    public:
        GlobalChecker(const ResolvedConstraint & c, const vector<Integer> & values, Integer element_base) :
            _c(c), _values(values), _base(element_base)
        {
        }

        auto holds(string_view global) const -> bool
        {
            if (global == "alldifferent") {
                auto xs = vars_or_scope();
                return std::set<Integer>(xs.begin(), xs.end()).size() == xs.size();
            }
            if (global == "not_all_equal") {
                auto xs = vars_or_scope();
                return std::any_of(xs.begin(), xs.end(), [&](Integer x) { return x != xs.front(); });
            }
            if (global == "among") {
                auto & p = params(3);
                auto xs = terms(list(p[1]));
                auto vs = terms(list(p[2]));
                auto n = std::count_if(xs.begin(), xs.end(), [&](Integer x) { return std::find(vs.begin(), vs.end(), x) != vs.end(); });
                return n == term(p[0]);
            }
            if (global == "atleast" || global == "atmost") {
                auto & p = params(3);
                auto k = term(p[0]);
                auto xs = terms(list(p[1]));
                auto v = term(p[2]);
                auto n = std::count(xs.begin(), xs.end(), v);
                return global == "atleast" ? n >= k : n <= k;
            }
            if (global == "element") {
                auto & p = params(3);
                auto i = term(p[0]);
                auto table = terms(list(p[1]));
                auto v = term(p[2]);
                if (i < _base || i - _base >= static_cast<Integer>(table.size()))
                    return false;
                return table[static_cast<size_t>(i - _base)] == v;
            }
            if (global == "global_cardinality") {
                auto & p = params(2);
                auto xs = terms(list(p[0]));
                for (auto & entry : list(p[1])) {
                    auto & f = record(entry, 2);
                    if (std::count(xs.begin(), xs.end(), term(f[0])) != term(f[1]))
                        return false;
                }
                return true;
            }
            if (global == "lex_less" || global == "lex_lesseq") {
                auto & p = params(2);
                auto xs = terms(list(p[0])), ys = terms(list(p[1]));
                return global == "lex_less" ? xs < ys : xs <= ys;
            }
            if (global == "weightedSum") {
                auto & p = params(3);
                Wide sum = 0;
                for (auto & entry : list(p[0])) {
                    auto & f = record(entry, 2);
                    sum += Wide{term(f[0])} * term(f[1]);
                }
                if (p[1].kind != Param::Kind::relop)
                    throw Malformed{};
                Wide k = term(p[2]);
                auto & op = p[1].name;
                if (op == "eq")
                    return sum == k;
                if (op == "ne")
                    return sum != k;
                if (op == "lt")
                    return sum < k;
                if (op == "le")
                    return sum <= k;
                if (op == "gt")
                    return sum > k;
                if (op == "ge")
                    return sum >= k;
                throw Malformed{};
            }
            if (global == "disjunctive") {
                auto & p = params(1);
                vector<std::pair<Wide, Wide>> tasks;
                for (auto & t : list(p[0])) {
                    auto & f = record(t, 2);
                    tasks.emplace_back(term(f[0]), term(f[1]));
                }
                for (size_t i = 0; i < tasks.size(); ++i)
                    for (size_t j = i + 1; j < tasks.size(); ++j) {
                        auto [oi, di] = tasks[i];
                        auto [oj, dj] = tasks[j];
                        if (! (oi + di <= oj || oj + dj <= oi))
                            return false;
                    }
                return true;
            }
            if (global == "diffn") {
                auto & p = params(1);
                vector<std::pair<vector<Integer>, vector<Integer>>> boxes;
                for (auto & b : list(p[0])) {
                    auto & f = record(b, 2);
                    boxes.emplace_back(terms(list(f[0])), terms(list(f[1])));
                }
                for (size_t i = 0; i < boxes.size(); ++i)
                    for (size_t j = i + 1; j < boxes.size(); ++j) {
                        bool apart = false;
                        for (size_t d = 0; d < boxes[i].first.size(); ++d) {
                            Wide oi = boxes[i].first[d], li = boxes[i].second[d];
                            Wide oj = boxes[j].first[d], lj = boxes[j].second[d];
                            apart = apart || oi + li <= oj || oj + lj <= oi;
                        }
                        if (! apart)
                            return false;
                    }
                return true;
            }
            if (global == "cumulative") {
                auto & p = params(2);
                struct Task
                {
                    Wide origin, duration, height;
                };
                vector<Task> tasks;
                for (auto & t : list(p[0])) {
                    if (t.kind != Param::Kind::record || (t.items.size() != 3 && t.items.size() != 4))
                        throw Malformed{};
                    auto & f = t.items;
                    Task task{term(f[0]), term(f[1]), term(f.back())};
                    if (f.size() == 4 && f[2].kind != Param::Kind::nil && task.origin + task.duration != term(f[2]))
                        return false;
                    tasks.push_back(task);
                }
                Wide capacity = term(p[1]);
                // the load can only peak where some task starts
                for (auto & at : tasks) {
                    Wide load = 0;
                    for (auto & t : tasks)
                        if (t.origin <= at.origin && at.origin < t.origin + t.duration)
                            load += t.height;
                    if (load > capacity)
                        return false;
                }
                return true;
            }
            throw Malformed{};
        }

    private:
        const ResolvedConstraint & _c;
        const vector<Integer> & _values;
        Integer _base;

        auto params(size_t n) const -> const vector<Param> &
        {
            if (! _c.params || _c.params->size() != n)
                throw Malformed{};
            return *_c.params;
        }

        static auto list(const Param & p) -> const vector<Param> &
        {
            if (p.kind != Param::Kind::list)
                throw Malformed{};
            return p.items;
        }

        static auto record(const Param & p, size_t n) -> const vector<Param> &
        {
            if (p.kind != Param::Kind::record || p.items.size() != n)
                throw Malformed{};
            return p.items;
        }

        auto term(const Param & p) const -> Integer
        {
            if (p.kind == Param::Kind::integer)
                return p.value;
            if (p.kind == Param::Kind::variable)
                return _values.at(static_cast<size_t>(p.value));
            throw Malformed{};
        }

        auto terms(const vector<Param> & items) const -> vector<Integer>
        {
            vector<Integer> result;
            for (auto & p : items)
                result.push_back(term(p));
            return result;
        }

        auto vars_or_scope() const -> vector<Integer>
        {
            if (_c.params && ! _c.params->empty())
                return terms(list(params(1)[0]));
            vector<Integer> result;
            for (auto v : _c.scope)
                result.push_back(_values.at(v));
            return result;
        }
    };

    auto satisfied(const ResolvedInstance & instance, const ResolvedConstraint & c, const vector<Integer> & values, Integer base) -> bool
    {
        if (auto r = std::get_if<RelationRef>(&c.reference)) {
            auto & relation = instance.relations.at(r->index);
            Tuple t;
            for (auto v : c.scope)
                t.push_back(values.at(v));
            bool listed = std::find(relation.tuples.begin(), relation.tuples.end(), t) != relation.tuples.end();
            return relation.semantics == Semantics::supports ? listed : ! listed;
        }
        if (auto p = std::get_if<PredicateRef>(&c.reference)) {
            if (! c.params)
                return false;
            auto ground = substitute(instance.predicates.at(p->index), *c.params);
            auto r = evaluate(ground, values);
            return r && *r != 0;
        }
        auto & global = std::get<GlobalRef>(c.reference).name;
        auto name = canonical_global_name(global);
        if (! name)
            return false;
        try {
            return GlobalChecker{c, values, base}.holds(*name);
        }
        catch (const Malformed &) {
            return false;
        }
    }
}

auto xsolve::first_violation(const ResolvedInstance & instance, const Solution & values, Integer element_base) -> optional<string>
{
    if (values.values.size() != instance.variables.size())
        return "<solution length>";
    for (size_t v = 0; v < values.values.size(); ++v)
        if (! instance.variables[v].domain.contains(values.values[v]))
            return "<domain of " + instance.variables[v].name + ">";
    for (auto & c : instance.constraints)
        if (! satisfied(instance, c, values.values, element_base))
            return c.name;
    return nullopt;
}

auto xsolve::verify_solution(const ResolvedInstance & instance, const Solution & values, Integer element_base) -> bool
{
    return ! first_violation(instance, values, element_base);
}
