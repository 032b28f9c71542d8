#ifndef XSOLVE_SRC_PROPAGATORS_KINDS_HH
#define XSOLVE_SRC_PROPAGATORS_KINDS_HH

#include <xsolve/propagators.hh>

#include <memory>

namespace xsolve::propagators
{
    auto make_table_supports(const PropagatorSpec &) -> std::unique_ptr<Propagator>;
    auto make_table_conflicts(const PropagatorSpec &) -> std::unique_ptr<Propagator>;
    auto make_expr_check(const PropagatorSpec &) -> std::unique_ptr<Propagator>;
    auto make_not_equal(const PropagatorSpec &) -> std::unique_ptr<Propagator>;
    auto make_linear(const PropagatorSpec &) -> std::unique_ptr<Propagator>;
    auto make_all_different(const PropagatorSpec &) -> std::unique_ptr<Propagator>;
    auto make_counting(const PropagatorSpec &) -> std::unique_ptr<Propagator>;
    auto make_cardinality(const PropagatorSpec &) -> std::unique_ptr<Propagator>;
    auto make_element(const PropagatorSpec &) -> std::unique_ptr<Propagator>;
    auto make_cumulative(const PropagatorSpec &) -> std::unique_ptr<Propagator>;
    auto make_lex(const PropagatorSpec &) -> std::unique_ptr<Propagator>;
}

#endif
