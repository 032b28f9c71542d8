#ifndef XSOLVE_INTEGER_SET_HH
#define XSOLVE_INTEGER_SET_HH

#include <xsolve/errors.hh>

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xsolve
{
    using Integer = std::int64_t;

    struct Interval
    {
        Integer lo;
        Integer hi;

        auto operator<=>(const Interval &) const = default;
    };

    /**
     * A finite set of integers stored as sorted, pairwise disjoint and
     * non-adjacent closed intervals. Every mutating operation keeps the
     * representation canonical, so two sets are equal iff their interval
     * lists are equal.
     */
    class IntegerSet
    {
    public:
        IntegerSet() = default;

        static auto range(Integer lo, Integer hi) -> IntegerSet;
        static auto singleton(Integer v) -> IntegerSet;
        static auto from_values(std::vector<Integer> values) -> IntegerSet;
        static auto from_intervals(std::vector<Interval> intervals) -> IntegerSet;

        [[nodiscard]] auto empty() const -> bool { return _ranges.empty(); }
        [[nodiscard]] auto min() const -> Integer { return _ranges.front().lo; }
        [[nodiscard]] auto max() const -> Integer { return _ranges.back().hi; }
        [[nodiscard]] auto contains(Integer v) const -> bool;
        [[nodiscard]] auto is_singleton() const -> bool { return _ranges.size() == 1 && _ranges[0].lo == _ranges[0].hi; }

        /// Saturates at UINT64_MAX for the full 64-bit range.
        [[nodiscard]] auto size() const -> std::uint64_t;

        [[nodiscard]] auto intervals() const -> std::span<const Interval> { return _ranges; }
        [[nodiscard]] auto values() const -> std::vector<Integer>;

        [[nodiscard]] auto intersect(const IntegerSet & other) const -> IntegerSet;
        [[nodiscard]] auto unite(const IntegerSet & other) const -> IntegerSet;
        [[nodiscard]] auto subtract(const IntegerSet & other) const -> IntegerSet;
        [[nodiscard]] auto intersects(const IntegerSet & other) const -> bool;
        [[nodiscard]] auto subset_of(const IntegerSet & other) const -> bool;

        // In-place narrowing; each returns true when the set changed.
        auto remove(Integer v) -> bool;
        auto remove_range(Integer lo, Integer hi) -> bool;
        auto restrict_to(Integer lo, Integer hi) -> bool;

        [[nodiscard]] auto to_string() const -> std::string;

        auto operator==(const IntegerSet &) const -> bool = default;

    private:
        std::vector<Interval> _ranges;

        void canonicalise();
    };

    /// Parses whitespace separated integer and `a..b` tokens into their union.
    auto parse_integer_set(std::string_view text) -> IntegerSet;

    /// Strict integer literal parse; throws FormatError.
    auto parse_integer(std::string_view token) -> Integer;
}

#endif
