#include "kinds.hh"

#include <algorithm>
#include <limits>
#include <map>

using namespace xsolve;

using std::size_t;
using std::unique_ptr;
using std::vector;

namespace
{
    /**
     * Shared counter behind among, atleast and atmost. With lb the number of
     * variables whose domain lies inside the counted set and ub the number
     * that can still take a counted value, the count must lie in [lb, ub];
     * once the count is pinned at either end the undecided variables are
     * forced into or out of the set.
     */
    class Counting : public Propagator
    {
    public:
        using Propagator::Propagator;

    protected:
        auto prune(DomainStore & store) -> PruneResult override
        {
            auto & data = std::get<CountData>(_spec.data);
            auto & values = data.values;
            auto vars = std::span{_spec.scope};
            bool has_count_var = _spec.kind == PropagatorKind::among;
            if (has_count_var)
                vars = vars.first(vars.size() - 1);

            Integer lb = 0, ub = 0;
            auto bounds = [&] {
                lb = ub = 0;
                for (auto v : vars) {
                    auto & d = store.domain(v);
                    if (d.subset_of(values))
                        ++lb, ++ub;
                    else if (d.intersects(values))
                        ++ub;
                }
            };
            bounds();

            Integer count_min = std::numeric_limits<Integer>::min(), count_max = std::numeric_limits<Integer>::max();
            switch (_spec.kind) {
                case PropagatorKind::among: {
                    auto c = _spec.scope.back();
                    store.restrict_to(c, lb, ub);
                    if (store.failed())
                        return PruneResult::failed;
                    count_min = store.min(c);
                    count_max = store.max(c);
                    break;
                }
                case PropagatorKind::at_least: count_min = data.bound; break;
                default: count_max = data.bound; break;
            }

            if (ub < count_min || lb > count_max)
                return contradiction(store);

            if (ub == count_min || lb == count_max) {
                bool into = ub == count_min;
                for (auto v : vars) {
                    auto & d = store.domain(v);
                    if (d.subset_of(values) || ! d.intersects(values))
                        continue;
                    store.intersect(v, into ? d.intersect(values) : d.subtract(values));
                    if (store.failed())
                        return PruneResult::failed;
                }
            }

            // the count variable may also be counted, so look again at the narrowed domains
            bounds();
            if (has_count_var) {
                auto c = _spec.scope.back();
                count_min = store.min(c);
                count_max = store.max(c);
            }
            if (has_count_var ? (lb == ub && count_min == count_max && lb == count_min) : (lb >= count_min && ub <= count_max))
                return PruneResult::subsumed;
            return PruneResult::no_change;
        }
    };

    /// One counter per listed value, filled by a single scan over the variables.
    class Cardinality : public Propagator
    {
    public:
        using Propagator::Propagator;

    protected:
        auto prune(DomainStore & store) -> PruneResult override
        {
            auto & values = std::get<CardinalityData>(_spec.data).values;
            auto & scope = _spec.scope;
            auto n = scope.size() - values.size();
            std::map<Integer, size_t> position;
            for (size_t k = 0; k < values.size(); ++k)
                position.emplace(values[k], k);

            vector<Integer> lb(values.size(), 0), ub(values.size(), 0);
            for (size_t i = 0; i < n; ++i) {
                auto & d = store.domain(scope[i]);
                if (d.is_singleton()) {
                    if (auto p = position.find(d.min()); p != position.end())
                        ++lb[p->second], ++ub[p->second];
                    continue;
                }
                for (auto & [value, k] : position)
                    if (d.contains(value))
                        ++ub[k];
            }

            bool decided = true;
            for (size_t k = 0; k < values.size(); ++k) {
                auto c = scope[n + k];
                store.restrict_to(c, lb[k], ub[k]);
                if (store.failed())
                    return PruneResult::failed;

                if (store.max(c) == lb[k] && lb[k] < ub[k]) {
                    // every open variable must avoid this value
                    for (size_t i = 0; i < n; ++i)
                        if (! store.assigned(scope[i]))
                            store.remove(scope[i], values[k]);
                }
                else if (store.min(c) == ub[k] && lb[k] < ub[k]) {
                    for (size_t i = 0; i < n; ++i)
                        if (! store.assigned(scope[i]) && store.contains(scope[i], values[k]))
                            store.assign(scope[i], values[k]);
                }
                if (store.failed())
                    return PruneResult::failed;
                decided = decided && store.assigned(c) && lb[k] == ub[k];
            }

            for (size_t i = 0; i < n && decided; ++i)
                decided = store.assigned(scope[i]);
            return decided ? PruneResult::subsumed : PruneResult::no_change;
        }
    };
}

auto xsolve::propagators::make_counting(const PropagatorSpec & spec) -> unique_ptr<Propagator>
{
    return std::make_unique<Counting>(spec);
}

auto xsolve::propagators::make_cardinality(const PropagatorSpec & spec) -> unique_ptr<Propagator>
{
    return std::make_unique<Cardinality>(spec);
}
