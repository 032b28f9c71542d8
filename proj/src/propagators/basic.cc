#include "kinds.hh"

#include <algorithm>

using namespace xsolve;

using std::move;
using std::size_t;
using std::unique_ptr;
using std::vector;

namespace
{
    // Larger domains are not enumerated by the checking propagators.
    constexpr std::uint64_t enumeration_limit = 1 << 16;

    /// Generalised arc consistency by scanning every tuple for validity.
    class TableSupports : public Propagator
    {
    public:
        using Propagator::Propagator;

    protected:
        auto prune(DomainStore & store) -> PruneResult override
        {
            auto & tuples = std::get<TableData>(_spec.data).tuples;
            auto & scope = _spec.scope;
            vector<vector<Integer>> supported(scope.size());
            bool any = false;
            for (auto & t : tuples) {
                bool valid = true;
                for (size_t i = 0; i < scope.size() && valid; ++i)
                    valid = store.contains(scope[i], t[i]);
                if (! valid)
                    continue;
                any = true;
                for (size_t i = 0; i < scope.size(); ++i)
                    supported[i].push_back(t[i]);
            }
            if (! any)
                return contradiction(store);

            bool all_assigned = true;
            for (size_t i = 0; i < scope.size(); ++i) {
                store.intersect(scope[i], IntegerSet::from_values(move(supported[i])));
                all_assigned = all_assigned && store.assigned(scope[i]);
            }
            return all_assigned ? PruneResult::subsumed : PruneResult::no_change;
        }
    };

    /// Forbidden tuples: filters only once a single scope variable is left open.
    class TableConflicts : public Propagator
    {
    public:
        using Propagator::Propagator;

    protected:
        auto prune(DomainStore & store) -> PruneResult override
        {
            auto & tuples = std::get<TableData>(_spec.data).tuples;
            auto & scope = _spec.scope;
            size_t open = scope.size(), open_count = 0;
            for (size_t i = 0; i < scope.size(); ++i)
                if (! store.assigned(scope[i])) {
                    open = i;
                    ++open_count;
                }
            if (open_count > 1)
                return PruneResult::no_change;

            for (auto & t : tuples) {
                bool matches = true;
                for (size_t i = 0; i < scope.size() && matches; ++i)
                    if (i != open)
                        matches = store.value(scope[i]) == t[i];
                if (! matches)
                    continue;
                if (open == scope.size())
                    return contradiction(store);
                store.remove(scope[open], t[open]);
                if (store.failed())
                    return PruneResult::failed;
            }
            return PruneResult::subsumed;
        }
    };

    /**
     * Generic expression check. Waits until at most one scope variable is
     * unassigned, then keeps exactly the values of that variable under which
     * the expression evaluates nonzero. A value whose evaluation errors is
     * never pruned; it is rejected only once it is actually assigned.
     */
    class ExprCheck : public Propagator
    {
    public:
        explicit ExprCheck(const PropagatorSpec & spec) :
            Propagator(spec)
        {
        }

    protected:
        auto prune(DomainStore & store) -> PruneResult override
        {
            auto & expr = std::get<ExprData>(_spec.data).expr;
            auto & scope = _spec.scope;
            if (_values.size() < store.size())
                _values.resize(store.size());

            size_t open = scope.size(), open_count = 0;
            for (size_t i = 0; i < scope.size(); ++i) {
                if (store.assigned(scope[i]))
                    _values[scope[i]] = store.value(scope[i]);
                else {
                    open = i;
                    ++open_count;
                }
            }

            if (open_count == 0) {
                auto r = evaluate(expr, _values);
                if (r && *r != 0)
                    return PruneResult::subsumed;
                return contradiction(store);
            }
            if (open_count > 1)
                return PruneResult::no_change;

            auto var = scope[open];
            if (store.domain(var).size() > enumeration_limit)
                return PruneResult::no_change;

            vector<Integer> rejected;
            bool erroring = false;
            for (auto v : store.domain(var).values()) {
                _values[var] = v;
                auto r = evaluate(expr, _values);
                if (! r)
                    erroring = true;
                else if (*r == 0)
                    rejected.push_back(v);
            }
            if (! rejected.empty())
                store.intersect(var, store.domain(var).subtract(IntegerSet::from_values(move(rejected))));
            if (store.failed())
                return PruneResult::failed;
            return erroring ? PruneResult::no_change : PruneResult::subsumed;
        }

    private:
        vector<Integer> _values;
    };

    class NotEqual : public Propagator
    {
    public:
        using Propagator::Propagator;

    protected:
        auto prune(DomainStore & store) -> PruneResult override
        {
            auto a = _spec.scope[0], b = _spec.scope[1];
            if (store.assigned(a))
                store.remove(b, store.value(a));
            else if (store.assigned(b))
                store.remove(a, store.value(b));
            else
                return PruneResult::no_change;
            return store.failed() ? PruneResult::failed : PruneResult::subsumed;
        }
    };
}

auto xsolve::propagators::make_table_supports(const PropagatorSpec & spec) -> unique_ptr<Propagator>
{
    return std::make_unique<TableSupports>(spec);
}

auto xsolve::propagators::make_table_conflicts(const PropagatorSpec & spec) -> unique_ptr<Propagator>
{
    return std::make_unique<TableConflicts>(spec);
}

auto xsolve::propagators::make_expr_check(const PropagatorSpec & spec) -> unique_ptr<Propagator>
{
    return std::make_unique<ExprCheck>(spec);
}

auto xsolve::propagators::make_not_equal(const PropagatorSpec & spec) -> unique_ptr<Propagator>
{
    return std::make_unique<NotEqual>(spec);
}
