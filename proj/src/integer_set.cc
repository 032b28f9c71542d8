#include <xsolve/integer_set.hh>

#include <fmt/core.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>

using namespace xsolve;

using std::move;
using std::string;
using std::string_view;
using std::vector;

namespace
{
    // a.hi + 1 >= b.lo without overflowing at the top of the range
    auto touches(const Interval & a, const Interval & b) -> bool
    {
        return a.hi == std::numeric_limits<Integer>::max() || a.hi + 1 >= b.lo;
    }
}

auto IntegerSet::range(Integer lo, Integer hi) -> IntegerSet
{
    IntegerSet result;
    if (lo <= hi)
        result._ranges.push_back({lo, hi});
    return result;
}

auto IntegerSet::singleton(Integer v) -> IntegerSet
{
    return range(v, v);
}

auto IntegerSet::from_values(vector<Integer> values) -> IntegerSet
{
    vector<Interval> intervals;
    intervals.reserve(values.size());
    for (auto v : values)
        intervals.push_back({v, v});
    return from_intervals(move(intervals));
}

auto IntegerSet::from_intervals(vector<Interval> intervals) -> IntegerSet
{
    IntegerSet result;
    for (auto & i : intervals)
        if (i.lo <= i.hi)
            result._ranges.push_back(i);
    result.canonicalise();
    return result;
}

void IntegerSet::canonicalise()
{
    std::sort(_ranges.begin(), _ranges.end());
    vector<Interval> merged;
    merged.reserve(_ranges.size());
    for (auto & i : _ranges) {
        if (! merged.empty() && touches(merged.back(), i))
            merged.back().hi = std::max(merged.back().hi, i.hi);
        else
            merged.push_back(i);
    }
    _ranges = move(merged);
}

auto IntegerSet::contains(Integer v) const -> bool
{
    auto it = std::upper_bound(_ranges.begin(), _ranges.end(), v,
        [](Integer x, const Interval & i) { return x < i.lo; });
    if (it == _ranges.begin())
        return false;
    --it;
    return v <= it->hi;
}

auto IntegerSet::size() const -> std::uint64_t
{
    std::uint64_t total = 0;
    for (auto & i : _ranges) {
        auto width = static_cast<std::uint64_t>(i.hi) - static_cast<std::uint64_t>(i.lo);
        if (width == std::numeric_limits<std::uint64_t>::max())
            return width;
        if (__builtin_add_overflow(total, width + 1, &total))
            return std::numeric_limits<std::uint64_t>::max();
    }
    return total;
}

auto IntegerSet::values() const -> vector<Integer>
{
    vector<Integer> result;
    for (auto & i : _ranges)
        for (Integer v = i.lo;; ++v) {
            result.push_back(v);
            if (v == i.hi)
                break;
        }
    return result;
}

auto IntegerSet::intersect(const IntegerSet & other) const -> IntegerSet
{
    IntegerSet result;
    auto a = _ranges.begin(), b = other._ranges.begin();
    while (a != _ranges.end() && b != other._ranges.end()) {
        auto lo = std::max(a->lo, b->lo), hi = std::min(a->hi, b->hi);
        if (lo <= hi)
            result._ranges.push_back({lo, hi});
        if (a->hi < b->hi)
            ++a;
        else
            ++b;
    }
    return result;
}

auto IntegerSet::unite(const IntegerSet & other) const -> IntegerSet
{
    auto all = _ranges;
    all.insert(all.end(), other._ranges.begin(), other._ranges.end());
    return from_intervals(move(all));
}

auto IntegerSet::subtract(const IntegerSet & other) const -> IntegerSet
{
    IntegerSet result = *this;
    for (auto & i : other._ranges)
        result.remove_range(i.lo, i.hi);
    return result;
}

auto IntegerSet::intersects(const IntegerSet & other) const -> bool
{
    auto a = _ranges.begin(), b = other._ranges.begin();
    while (a != _ranges.end() && b != other._ranges.end()) {
        if (std::max(a->lo, b->lo) <= std::min(a->hi, b->hi))
            return true;
        if (a->hi < b->hi)
            ++a;
        else
            ++b;
    }
    return false;
}

auto IntegerSet::subset_of(const IntegerSet & other) const -> bool
{
    return intersect(other) == *this;
}

auto IntegerSet::remove(Integer v) -> bool
{
    return remove_range(v, v);
}

auto IntegerSet::remove_range(Integer lo, Integer hi) -> bool
{
    if (lo > hi || empty() || hi < min() || lo > max())
        return false;

    vector<Interval> kept;
    kept.reserve(_ranges.size() + 1);
    bool changed = false;
    for (auto & i : _ranges) {
        if (i.hi < lo || i.lo > hi) {
            kept.push_back(i);
            continue;
        }
        changed = true;
        if (i.lo < lo)
            kept.push_back({i.lo, lo - 1});
        if (i.hi > hi)
            kept.push_back({hi + 1, i.hi});
    }
    if (changed)
        _ranges = move(kept);
    return changed;
}

auto IntegerSet::restrict_to(Integer lo, Integer hi) -> bool
{
    if (empty())
        return false;
    if (lo > hi) {
        _ranges.clear();
        return true;
    }
    bool changed = false;
    if (lo > min())
        changed = remove_range(min(), lo - 1) || changed;
    if (! empty() && hi < max())
        changed = remove_range(hi + 1, max()) || changed;
    return changed;
}

auto IntegerSet::to_string() const -> string
{
    string result;
    for (auto & i : _ranges) {
        if (! result.empty())
            result += ' ';
        if (i.lo == i.hi)
            result += fmt::format("{}", i.lo);
        else
            result += fmt::format("{}..{}", i.lo, i.hi);
    }
    return result;
}

auto xsolve::parse_integer(string_view token) -> Integer
{
    if (! token.empty() && token.front() == '+')
        token.remove_prefix(1);
    Integer value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
        throw FormatError(fmt::format("'{}' is not an integer", token));
    return value;
}

auto xsolve::parse_integer_set(string_view text) -> IntegerSet
{
    vector<Interval> intervals;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos == text.size())
            break;
        auto end = pos;
        while (end < text.size() && ! std::isspace(static_cast<unsigned char>(text[end])))
            ++end;
        auto token = text.substr(pos, end - pos);
        pos = end;

        // search from 1 so a leading minus sign is never mistaken for part of ".."
        auto dots = token.find("..", 1);
        if (dots == string_view::npos) {
            auto v = parse_integer(token);
            intervals.push_back({v, v});
        }
        else {
            auto lo = parse_integer(token.substr(0, dots)), hi = parse_integer(token.substr(dots + 2));
            if (lo > hi)
                throw FormatError(fmt::format("empty interval '{}'", token));
            intervals.push_back({lo, hi});
        }
    }
    return IntegerSet::from_intervals(move(intervals));
}
