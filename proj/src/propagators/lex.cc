#include "kinds.hh"

using namespace xsolve;

using std::size_t;
using std::unique_ptr;

namespace
{
    /**
     * X <lex Y (or <=lex), with the scope holding X followed by Y. A pointer
     * skips the prefix of positions fixed to equal values; at the first
     * undecided position x <= y holds, and x < y once the suffix can no
     * longer be completed with x and y equal there.
     */
    class Lex : public Propagator
    {
    public:
        using Propagator::Propagator;

    protected:
        auto prune(DomainStore & store) -> PruneResult override
        {
            bool strict = _spec.kind == PropagatorKind::lex_less;
            auto n = _spec.scope.size() / 2;

            size_t i = 0;
            while (true) {
                while (i < n && store.assigned(x(i)) && store.assigned(y(i)) && store.value(x(i)) == store.value(y(i)))
                    ++i;
                if (i == n)
                    return strict ? contradiction(store) : PruneResult::subsumed;

                store.set_max(x(i), store.max(y(i)));
                store.set_min(y(i), store.min(x(i)));
                if (store.failed())
                    return PruneResult::failed;
                if (store.max(x(i)) < store.min(y(i)))
                    return PruneResult::subsumed;

                if (! suffix_feasible(store, i + 1, strict)) {
                    store.set_max(x(i), store.max(y(i)) - 1);
                    store.set_min(y(i), store.min(x(i)) + 1);
                    if (store.failed())
                        return PruneResult::failed;
                    return store.max(x(i)) < store.min(y(i)) ? PruneResult::subsumed : PruneResult::no_change;
                }

                if (! (store.assigned(x(i)) && store.assigned(y(i))))
                    return PruneResult::no_change;
            }
        }

    private:
        [[nodiscard]] auto x(size_t i) const -> size_t { return _spec.scope[i]; }
        [[nodiscard]] auto y(size_t i) const -> size_t { return _spec.scope[_spec.scope.size() / 2 + i]; }

        // can positions from..n-1 still satisfy the ordering?
        auto suffix_feasible(const DomainStore & store, size_t from, bool strict) const -> bool
        {
            auto n = _spec.scope.size() / 2;
            for (auto j = from; j < n; ++j) {
                if (store.min(x(j)) < store.max(y(j)))
                    return true;
                if (store.min(x(j)) > store.max(y(j)))
                    return false;
            }
            return ! strict;
        }
    };
}

auto xsolve::propagators::make_lex(const PropagatorSpec & spec) -> unique_ptr<Propagator>
{
    return std::make_unique<Lex>(spec);
}
