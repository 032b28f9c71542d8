#include <xsolve/propagators.hh>

#include "kinds.hh"

#include <fmt/core.h>

#include <stdexcept>

using namespace xsolve;

using std::move;
using namespace xsolve::propagators;

Propagator::Propagator(PropagatorSpec spec) :
    _spec(move(spec))
{
}

auto Propagator::run(DomainStore & store) -> PruneResult
{
    auto before = store.modification_count();
    auto result = prune(store);
    if (store.failed() || result == PruneResult::failed) {
        if (! store.failed())
            contradiction(store);
        return PruneResult::failed;
    }
    if (result == PruneResult::subsumed)
        return result;
    return store.modification_count() != before ? PruneResult::changed : PruneResult::no_change;
}

auto Propagator::contradiction(DomainStore & store) const -> PruneResult
{
    if (! _spec.scope.empty())
        store.wipe_out(_spec.scope.front());
    else
        store.fail_without_variable();
    return PruneResult::failed;
}

auto xsolve::make_propagator(const PropagatorSpec & spec) -> std::unique_ptr<Propagator>
{
    switch (spec.kind) {
        case PropagatorKind::table_supports: return make_table_supports(spec);
        case PropagatorKind::table_conflicts: return make_table_conflicts(spec);
        case PropagatorKind::expr_check: return make_expr_check(spec);
        case PropagatorKind::not_equal: return make_not_equal(spec);
        case PropagatorKind::linear_rel: return make_linear(spec);
        case PropagatorKind::all_different: return make_all_different(spec);
        case PropagatorKind::among:
        case PropagatorKind::at_least:
        case PropagatorKind::at_most: return make_counting(spec);
        case PropagatorKind::global_cardinality: return make_cardinality(spec);
        case PropagatorKind::element: return make_element(spec);
        case PropagatorKind::cumulative: return make_cumulative(spec);
        case PropagatorKind::lex_less:
        case PropagatorKind::lex_less_eq: return make_lex(spec);
    }
    throw std::invalid_argument(fmt::format("no propagator for kind {}", static_cast<int>(spec.kind)));
}

auto xsolve::propagator_prune(Propagator & p, DomainStore & store) -> PruneResult
{
    return p.run(store);
}
