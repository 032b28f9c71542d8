#ifndef XSOLVE_PROPAGATORS_HH
#define XSOLVE_PROPAGATORS_HH

#include <xsolve/compiler.hh>
#include <xsolve/domain_store.hh>

#include <memory>
#include <span>

namespace xsolve
{
    enum class PruneResult
    {
        no_change,
        changed,
        subsumed,
        failed
    };

    /**
     * Executable form of a PropagatorSpec. prune() must never remove a value
     * that takes part in a satisfying assignment of this constraint under the
     * current domains of the other scope variables, and may only report
     * subsumed when every completion of the current domains satisfies it.
     */
    class Propagator
    {
    public:
        explicit Propagator(PropagatorSpec spec);
        virtual ~Propagator() = default;

        Propagator(const Propagator &) = delete;
        auto operator=(const Propagator &) -> Propagator & = delete;

        [[nodiscard]] auto spec() const -> const PropagatorSpec & { return _spec; }
        [[nodiscard]] auto scope() const -> std::span<const std::size_t> { return _spec.scope; }

        /// Runs one filtering pass and classifies what happened.
        auto run(DomainStore & store) -> PruneResult;

    protected:
        PropagatorSpec _spec;

        /// Returns subsumed, failed, or no_change; run() works out whether anything changed.
        virtual auto prune(DomainStore & store) -> PruneResult = 0;

        /// Empties a scope domain so that the store reports failure.
        auto contradiction(DomainStore & store) const -> PruneResult;
    };

    auto make_propagator(const PropagatorSpec & spec) -> std::unique_ptr<Propagator>;

    auto propagator_prune(Propagator & p, DomainStore & store) -> PruneResult;
}

#endif
