#include <xsolve/domain_store.hh>

#include <limits>
#include <stdexcept>

using namespace xsolve;

using std::move;

namespace
{
    constexpr auto never_saved = std::numeric_limits<std::size_t>::max();
}

DomainStore::DomainStore(std::vector<IntegerSet> initial) :
    _domains(move(initial)),
    _saved_at(_domains.size(), never_saved),
    _is_changed(_domains.size(), false)
{
    for (auto & d : _domains)
        if (d.empty())
            _failed = true;
}

void DomainStore::save(std::size_t v)
{
    if (_marks.empty() || _saved_at[v] == _marks.size())
        return;
    _trail.push_back({v, _saved_at[v], _domains[v]});
    _saved_at[v] = _marks.size();
}

auto DomainStore::note(std::size_t v, bool changed) -> bool
{
    if (! changed)
        return false;
    ++_modifications;
    if (! _is_changed[v]) {
        _is_changed[v] = true;
        _changed.push_back(v);
    }
    if (_domains[v].empty())
        _failed = true;
    return true;
}

auto DomainStore::remove(std::size_t v, Integer x) -> bool
{
    if (! _domains[v].contains(x))
        return false;
    save(v);
    return note(v, _domains[v].remove(x));
}

auto DomainStore::remove_range(std::size_t v, Integer lo, Integer hi) -> bool
{
    auto & d = _domains[v];
    if (d.empty() || lo > hi || hi < d.min() || lo > d.max())
        return false;
    auto copy = d;
    if (! copy.remove_range(lo, hi))
        return false;
    save(v);
    d = move(copy);
    return note(v, true);
}

auto DomainStore::restrict_to(std::size_t v, Integer lo, Integer hi) -> bool
{
    auto & d = _domains[v];
    if (d.empty() || (lo <= d.min() && d.max() <= hi))
        return false;
    save(v);
    return note(v, d.restrict_to(lo, hi));
}

auto DomainStore::set_min(std::size_t v, Integer lo) -> bool
{
    return ! _domains[v].empty() && restrict_to(v, lo, _domains[v].max());
}

auto DomainStore::set_max(std::size_t v, Integer hi) -> bool
{
    return ! _domains[v].empty() && restrict_to(v, _domains[v].min(), hi);
}

auto DomainStore::assign(std::size_t v, Integer x) -> bool
{
    return restrict_to(v, x, x);
}

auto DomainStore::intersect(std::size_t v, const IntegerSet & allowed) -> bool
{
    auto narrowed = _domains[v].intersect(allowed);
    if (narrowed == _domains[v])
        return false;
    save(v);
    _domains[v] = move(narrowed);
    return note(v, true);
}

void DomainStore::wipe_out(std::size_t v)
{
    restrict_to(v, 1, 0);
}

void DomainStore::fail_without_variable()
{
    _failed = true;
    ++_modifications;
}

void DomainStore::push()
{
    if (_failed)
        throw std::logic_error("push on a failed store");
    _marks.push_back(_trail.size());
}

void DomainStore::pop()
{
    if (_marks.empty())
        throw std::logic_error("pop without a matching push");
    auto mark = _marks.back();
    _marks.pop_back();
    while (_trail.size() > mark) {
        auto & e = _trail.back();
        _domains[e.var] = move(e.previous_domain);
        _saved_at[e.var] = e.previous_level;
        _trail.pop_back();
    }
    _failed = false;
    clear_changed();
}

void DomainStore::clear_changed()
{
    for (auto v : _changed)
        _is_changed[v] = false;
    _changed.clear();
}
