#ifndef XSOLVE_DOMAIN_STORE_HH
#define XSOLVE_DOMAIN_STORE_HH

#include <xsolve/integer_set.hh>

#include <cstddef>
#include <span>
#include <vector>

namespace xsolve
{
    /**
     * Current domains of every variable, with a trail so that pop() puts
     * back exactly the domains seen at the matching push(). Each variable is
     * saved at most once per level. Narrowing calls record the variable in
     * changed() so the propagation loop can wake its watchers.
     */
    class DomainStore
    {
    public:
        explicit DomainStore(std::vector<IntegerSet> initial);

        [[nodiscard]] auto size() const -> std::size_t { return _domains.size(); }
        [[nodiscard]] auto domain(std::size_t v) const -> const IntegerSet & { return _domains[v]; }
        [[nodiscard]] auto domains() const -> std::span<const IntegerSet> { return _domains; }
        [[nodiscard]] auto failed() const -> bool { return _failed; }

        [[nodiscard]] auto assigned(std::size_t v) const -> bool { return _domains[v].is_singleton(); }
        [[nodiscard]] auto value(std::size_t v) const -> Integer { return _domains[v].min(); }
        [[nodiscard]] auto min(std::size_t v) const -> Integer { return _domains[v].min(); }
        [[nodiscard]] auto max(std::size_t v) const -> Integer { return _domains[v].max(); }
        [[nodiscard]] auto contains(std::size_t v, Integer x) const -> bool { return _domains[v].contains(x); }

        // Each returns true iff the domain shrank. Emptying a domain sets failed().
        auto remove(std::size_t v, Integer x) -> bool;
        auto remove_range(std::size_t v, Integer lo, Integer hi) -> bool;
        auto restrict_to(std::size_t v, Integer lo, Integer hi) -> bool;
        auto set_min(std::size_t v, Integer lo) -> bool;
        auto set_max(std::size_t v, Integer hi) -> bool;
        auto assign(std::size_t v, Integer x) -> bool;
        auto intersect(std::size_t v, const IntegerSet & allowed) -> bool;
        void wipe_out(std::size_t v);

        /// A contradiction with no variable to empty, raised by constant constraints.
        void fail_without_variable();

        /// Number of narrowing events so far; never decreases.
        [[nodiscard]] auto modification_count() const -> std::uint64_t { return _modifications; }

        void push();
        void pop();
        [[nodiscard]] auto level() const -> std::size_t { return _marks.size(); }

        [[nodiscard]] auto changed() const -> std::span<const std::size_t> { return _changed; }
        void clear_changed();

        auto operator==(const DomainStore & other) const -> bool
        {
            return _failed == other._failed && _domains == other._domains;
        }

    private:
        struct TrailEntry
        {
            std::size_t var;
            std::size_t previous_level;
            IntegerSet previous_domain;
        };

        std::vector<IntegerSet> _domains;
        std::vector<std::size_t> _saved_at;
        std::vector<TrailEntry> _trail;
        std::vector<std::size_t> _marks;
        std::vector<std::size_t> _changed;
        std::vector<bool> _is_changed;
        bool _failed = false;
        std::uint64_t _modifications = 0;

        void save(std::size_t v);
        auto note(std::size_t v, bool changed) -> bool;
    };
}

#endif
