#ifndef XSOLVE_ENGINE_HH
#define XSOLVE_ENGINE_HH

#include <xsolve/compiler.hh>
#include <xsolve/domain_store.hh>
#include <xsolve/propagators.hh>

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace xsolve
{
    enum class VarHeuristic
    {
        input,
        min_dom,
        max_deg
    };

    enum class ValHeuristic
    {
        min,
        max
    };

    struct Strategy
    {
        VarHeuristic var = VarHeuristic::input;
        ValHeuristic val = ValHeuristic::min;
    };

    auto var_heuristic_from_name(std::string_view name) -> std::optional<VarHeuristic>;
    auto val_heuristic_from_name(std::string_view name) -> std::optional<ValHeuristic>;

    struct Limits
    {
        std::optional<std::uint64_t> nodes;
        std::optional<std::chrono::duration<double>> time;
    };

    struct SearchStats
    {
        std::uint64_t nodes = 0;
        std::uint64_t failures = 0;
        std::uint64_t propagations = 0;
        std::uint64_t peak_depth = 0;
        std::uint64_t solutions = 0;

        auto operator==(const SearchStats &) const -> bool = default;
    };

    struct Solution
    {
        std::vector<Integer> values;

        auto operator==(const Solution &) const -> bool = default;
        auto operator<=>(const Solution &) const = default;
    };

    struct SearchResult
    {
        std::vector<Solution> solutions;
        SearchStats stats;
        // false when a node or time budget cut the search short
        bool complete = true;
    };

    enum class FixpointResult
    {
        consistent,
        failed
    };

    /**
     * Executable propagators of a Problem together with their watch lists
     * and the subsumption state, which is undone alongside the store.
     */
    class Propagation
    {
    public:
        explicit Propagation(const Problem & problem);

        [[nodiscard]] auto size() const -> std::size_t { return _propagators.size(); }
        [[nodiscard]] auto propagator(std::size_t i) const -> const Propagator & { return *_propagators[i]; }
        [[nodiscard]] auto subsumed(std::size_t i) const -> bool { return _subsumed[i]; }

        /// Number of propagators watching v.
        [[nodiscard]] auto degree(std::size_t v) const -> std::size_t { return _watchers[v].size(); }

        void schedule(std::size_t p);
        void schedule_all();

        /**
         * Runs queued propagators, plus the watchers of every variable in
         * store.changed(), until nothing changes or a domain empties.
         */
        auto fixpoint(DomainStore & store, SearchStats * stats = nullptr) -> FixpointResult;

        void push(DomainStore & store);
        void pop(DomainStore & store);

    private:
        std::vector<std::unique_ptr<Propagator>> _propagators;
        std::vector<std::vector<std::size_t>> _watchers;
        std::vector<std::size_t> _queue;
        std::size_t _head = 0;
        std::vector<bool> _queued;
        std::vector<bool> _subsumed;
        std::vector<std::size_t> _retired;
        std::vector<std::size_t> _marks;

        void wake(DomainStore & store);
        void clear_queue();
    };

    /// Convenience: a one-off fixpoint over every propagator of the problem.
    auto propagate_fixpoint(const Problem & problem, DomainStore & store) -> FixpointResult;

    /// Receives every choice point and the store as restored after backtracking out of it.
    class SearchObserver
    {
    public:
        virtual ~SearchObserver() = default;
        virtual void choice_point(const DomainStore &) {}
        virtual void restored(const DomainStore &) {}
    };

    struct SearchOptions
    {
        Strategy strategy;
        Limits limits;
        // stop after this many solutions; unset means all
        std::optional<std::uint64_t> solution_limit;
        SearchObserver * observer = nullptr;
    };

    auto search(const Problem & problem, const SearchOptions & options) -> SearchResult;

    auto search_first(const Problem & problem, const Strategy & strategy = {}, const Limits & limits = {}) -> SearchResult;
    auto search_all(const Problem & problem, const Strategy & strategy = {}, std::optional<std::uint64_t> limit = std::nullopt,
        const Limits & limits = {}) -> SearchResult;

    /**
     * Checks every constraint of the instance directly against its
     * definition, without going through the compiler or any propagator.
     * Returns the name of the first violated constraint, if any.
     */
    auto first_violation(const ResolvedInstance & instance, const Solution & values, Integer element_base = default_element_base)
        -> std::optional<std::string>;

    auto verify_solution(const ResolvedInstance & instance, const Solution & values, Integer element_base = default_element_base)
        -> bool;
}

#endif
