#include "kinds.hh"

#include <algorithm>

using namespace xsolve;

using std::size_t;
using std::unique_ptr;
using std::vector;

namespace
{
    /**
     * Value propagation: an assigned position removes its value from every
     * other position. Afterwards the open positions must be able to take
     * pairwise distinct values, which needs at least as many values in the
     * union of their domains as there are open positions.
     */
    class AllDifferent : public Propagator
    {
    public:
        using Propagator::Propagator;

    protected:
        auto prune(DomainStore & store) -> PruneResult override
        {
            auto & scope = _spec.scope;
            vector<bool> done(scope.size(), false);
            for (bool again = true; again;) {
                again = false;
                for (size_t i = 0; i < scope.size(); ++i) {
                    if (done[i] || ! store.assigned(scope[i]))
                        continue;
                    done[i] = true;
                    again = true;
                    auto value = store.value(scope[i]);
#ifdef XSOLVE_FAULT_INJECTION
                    // deliberately wrong: removes a neighbouring value so the harness can catch it
                    value = value + 1;
#endif
                    for (size_t j = 0; j < scope.size(); ++j)
                        if (j != i)
                            store.remove(scope[j], value);
                    if (store.failed())
                        return PruneResult::failed;
                }
            }

            IntegerSet open_values;
            size_t open = 0;
            for (size_t i = 0; i < scope.size(); ++i)
                if (! store.assigned(scope[i])) {
                    ++open;
                    open_values = open_values.unite(store.domain(scope[i]));
                }
            if (open == 0)
                return PruneResult::subsumed;
#ifndef XSOLVE_FAULT_INJECTION
            if (open_values.size() < open)
                return contradiction(store);
#endif
            return PruneResult::no_change;
        }
    };
}

auto xsolve::propagators::make_all_different(const PropagatorSpec & spec) -> unique_ptr<Propagator>
{
    return std::make_unique<AllDifferent>(spec);
}
