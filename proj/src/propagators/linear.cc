#include "kinds.hh"

#include <algorithm>
#include <limits>

using namespace xsolve;

using std::size_t;
using std::unique_ptr;
using std::vector;

namespace
{
    using Wide = __int128;

    auto floor_div(Wide a, Wide b) -> Wide
    {
        auto q = a / b;
        if ((a % b != 0) && ((a < 0) != (b < 0)))
            --q;
        return q;
    }

    auto ceil_div(Wide a, Wide b) -> Wide
    {
        auto q = a / b;
        if ((a % b != 0) && ((a < 0) == (b < 0)))
            ++q;
        return q;
    }

    constexpr Wide lowest = std::numeric_limits<Integer>::min();
    constexpr Wide highest = std::numeric_limits<Integer>::max();

    /**
     * Bounds filtering for sum(c_i * x_i) op k. Every relation is reduced to
     * one or two "sum <= k" passes over possibly negated coefficients; ne only
     * acts when a single variable is left open.
     */
    class Linear : public Propagator
    {
    public:
        using Propagator::Propagator;

    protected:
        auto prune(DomainStore & store) -> PruneResult override
        {
            auto & data = std::get<LinearData>(_spec.data);
            Wide k = data.constant;
            switch (data.op) {
                case RelOp::le: return at_most(store, 1, k);
                case RelOp::lt: return at_most(store, 1, k - 1);
                case RelOp::ge: return at_most(store, -1, -k);
                case RelOp::gt: return at_most(store, -1, -k - 1);
                case RelOp::eq: return equal(store, k);
                case RelOp::ne: return not_equal(store, k);
            }
            return PruneResult::no_change;
        }

    private:
        auto term_min(const DomainStore & store, size_t i, Wide sign) const -> Wide
        {
            Wide c = sign * std::get<LinearData>(_spec.data).coeffs[i];
            auto v = _spec.scope[i];
            return c >= 0 ? c * store.min(v) : c * store.max(v);
        }

        auto term_max(const DomainStore & store, size_t i, Wide sign) const -> Wide
        {
            Wide c = sign * std::get<LinearData>(_spec.data).coeffs[i];
            auto v = _spec.scope[i];
            return c >= 0 ? c * store.max(v) : c * store.min(v);
        }

        // sum(sign * c_i * x_i) <= k, iterated to a local fixpoint
        auto at_most(DomainStore & store, Wide sign, Wide k) -> PruneResult
        {
            auto & coeffs = std::get<LinearData>(_spec.data).coeffs;
            auto & scope = _spec.scope;
            for (bool again = true; again;) {
                again = false;
                Wide min_sum = 0, max_sum = 0;
                for (size_t i = 0; i < scope.size(); ++i) {
                    min_sum += term_min(store, i, sign);
                    max_sum += term_max(store, i, sign);
                }
                if (min_sum > k)
                    return contradiction(store);
                if (max_sum <= k)
                    return PruneResult::subsumed;

                for (size_t i = 0; i < scope.size(); ++i) {
                    Wide c = sign * coeffs[i];
                    if (c == 0)
                        continue;
                    auto slack = k - (min_sum - term_min(store, i, sign));
                    bool changed = c > 0
                        ? store.restrict_to(scope[i], store.min(scope[i]), static_cast<Integer>(std::clamp(floor_div(slack, c), lowest, highest)))
                        : store.restrict_to(scope[i], static_cast<Integer>(std::clamp(ceil_div(slack, c), lowest, highest)), store.max(scope[i]));
                    if (store.failed())
                        return PruneResult::failed;
                    if (changed) {
                        again = true;
                        break;
                    }
                }
            }
            return PruneResult::no_change;
        }

        auto equal(DomainStore & store, Wide k) -> PruneResult
        {
            while (true) {
                auto before = store.modification_count();
                auto upper = at_most(store, 1, k);
                if (upper == PruneResult::failed)
                    return upper;
                auto lower = at_most(store, -1, -k);
                if (lower == PruneResult::failed)
                    return lower;
                if (upper == PruneResult::subsumed && lower == PruneResult::subsumed)
                    return PruneResult::subsumed;
                if (store.modification_count() == before)
                    return PruneResult::no_change;
            }
        }

        auto not_equal(DomainStore & store, Wide k) -> PruneResult
        {
            auto & coeffs = std::get<LinearData>(_spec.data).coeffs;
            auto & scope = _spec.scope;
            Wide fixed = 0;
            size_t open = scope.size(), open_count = 0;
            for (size_t i = 0; i < scope.size(); ++i) {
                if (coeffs[i] == 0)
                    continue;
                if (store.assigned(scope[i]))
                    fixed += Wide{coeffs[i]} * store.value(scope[i]);
                else {
                    open = i;
                    ++open_count;
                }
            }
            if (open_count == 0)
                return fixed != k ? PruneResult::subsumed : contradiction(store);
            if (open_count > 1)
                return PruneResult::no_change;

            auto rest = k - fixed;
            Wide c = coeffs[open];
            if (rest % c == 0) {
                auto v = rest / c;
                if (v >= lowest && v <= highest)
                    store.remove(scope[open], static_cast<Integer>(v));
            }
            return store.failed() ? PruneResult::failed : PruneResult::subsumed;
        }
    };
}

auto xsolve::propagators::make_linear(const PropagatorSpec & spec) -> unique_ptr<Propagator>
{
    return std::make_unique<Linear>(spec);
}
