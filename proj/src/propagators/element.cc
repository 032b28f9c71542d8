#include "kinds.hh"

using namespace xsolve;

using std::move;
using std::size_t;
using std::unique_ptr;
using std::vector;

namespace
{
    /// table[index] = value, where the first table entry sits at index `base`.
    class Element : public Propagator
    {
    public:
        using Propagator::Propagator;

    protected:
        auto prune(DomainStore & store) -> PruneResult override
        {
            auto base = std::get<ElementData>(_spec.data).base;
            auto & scope = _spec.scope;
            auto index = scope.front(), value = scope.back();
            auto entries = scope.size() - 2;
            auto entry = [&](Integer i) { return scope[static_cast<size_t>(i - base) + 1]; };

            store.restrict_to(index, base, base + static_cast<Integer>(entries) - 1);
            if (store.failed())
                return PruneResult::failed;

            vector<Integer> dead;
            IntegerSet reachable;
            for (auto i : store.domain(index).values()) {
                auto & d = store.domain(entry(i));
                if (d.intersects(store.domain(value)))
                    reachable = reachable.unite(d);
                else
                    dead.push_back(i);
            }
            if (! dead.empty())
                store.intersect(index, store.domain(index).subtract(IntegerSet::from_values(move(dead))));
            if (store.failed())
                return PruneResult::failed;
            store.intersect(value, reachable);
            if (store.failed())
                return PruneResult::failed;

            if (store.assigned(index)) {
                auto t = entry(store.value(index));
                store.intersect(t, store.domain(value));
                store.intersect(value, store.domain(t));
                if (store.failed())
                    return PruneResult::failed;
                if (store.assigned(t) && store.assigned(value))
                    return PruneResult::subsumed;
            }
            return PruneResult::no_change;
        }
    };
}

auto xsolve::propagators::make_element(const PropagatorSpec & spec) -> unique_ptr<Propagator>
{
    return std::make_unique<Element>(spec);
}
