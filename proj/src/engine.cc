#include <xsolve/engine.hh>

#include <algorithm>

using namespace xsolve;

using std::nullopt;
using std::optional;
using std::size_t;
using std::string_view;
using std::vector;

auto xsolve::var_heuristic_from_name(string_view name) -> optional<VarHeuristic>
{
    if (name == "input")
        return VarHeuristic::input;
    if (name == "min-dom")
        return VarHeuristic::min_dom;
    if (name == "max-deg")
        return VarHeuristic::max_deg;
    return nullopt;
}

auto xsolve::val_heuristic_from_name(string_view name) -> optional<ValHeuristic>
{
    if (name == "min")
        return ValHeuristic::min;
    if (name == "max")
        return ValHeuristic::max;
    return nullopt;
}

Propagation::Propagation(const Problem & problem) :
    _watchers(problem.domains.size()),
    _queued(problem.propagators.size(), false),
    _subsumed(problem.propagators.size(), false)
{
    for (size_t p = 0; p < problem.propagators.size(); ++p) {
        auto & spec = problem.propagators[p];
        _propagators.push_back(make_propagator(spec));
        for (auto v : spec.scope)
            if (_watchers[v].empty() || _watchers[v].back() != p)
                _watchers[v].push_back(p);
    }
}

void Propagation::schedule(size_t p)
{
    if (_queued[p] || _subsumed[p])
        return;
    _queued[p] = true;
    _queue.push_back(p);
}

void Propagation::schedule_all()
{
    for (size_t p = 0; p < _propagators.size(); ++p)
        schedule(p);
}

void Propagation::wake(DomainStore & store)
{
    for (auto v : store.changed())
        for (auto p : _watchers[v])
            schedule(p);
    store.clear_changed();
}

void Propagation::clear_queue()
{
    for (auto i = _head; i < _queue.size(); ++i)
        _queued[_queue[i]] = false;
    _queue.clear();
    _head = 0;
}

auto Propagation::fixpoint(DomainStore & store, SearchStats * stats) -> FixpointResult
{
    if (store.failed()) {
        clear_queue();
        store.clear_changed();
        return FixpointResult::failed;
    }

    wake(store);
    while (_head < _queue.size()) {
        auto p = _queue[_head++];
        _queued[p] = false;
        if (_head == _queue.size()) {
            _queue.clear();
            _head = 0;
        }

        auto result = _propagators[p]->run(store);
        if (stats)
            ++stats->propagations;
        if (result == PruneResult::failed) {
            clear_queue();
            store.clear_changed();
            return FixpointResult::failed;
        }
        if (result == PruneResult::subsumed) {
            _subsumed[p] = true;
            _retired.push_back(p);
        }
        wake(store);
    }
    return FixpointResult::consistent;
}

void Propagation::push(DomainStore & store)
{
    store.push();
    _marks.push_back(_retired.size());
}

void Propagation::pop(DomainStore & store)
{
    store.pop();
    auto mark = _marks.back();
    _marks.pop_back();
    while (_retired.size() > mark) {
        _subsumed[_retired.back()] = false;
        _retired.pop_back();
    }
    clear_queue();
}

auto xsolve::propagate_fixpoint(const Problem & problem, DomainStore & store) -> FixpointResult
{
    Propagation propagation{problem};
    propagation.schedule_all();
    return propagation.fixpoint(store);
}

namespace
{
    class Search
    {
    public:
        Search(const Problem & problem, const SearchOptions & options) :
            _problem(problem),
            _options(options),
            _store(problem.domains),
            _propagation(problem),
            _start(std::chrono::steady_clock::now())
        {
        }

        auto run() -> SearchResult
        {
            if (! enter_node())
                return interrupted();
            _propagation.schedule_all();
            if (_propagation.fixpoint(_store, &_result.stats) == FixpointResult::failed) {
                ++_result.stats.failures;
                return std::move(_result);
            }

            while (true) {
                auto var = select_variable();
                if (! var) {
                    record_solution();
                    if (_options.solution_limit && _result.stats.solutions >= *_options.solution_limit)
                        return std::move(_result);
                    if (! backtrack())
                        return finish();
                    continue;
                }

                auto value = select_value(*var);
                if (_options.observer)
                    _options.observer->choice_point(_store);
                _stack.push_back({*var, value, false});
                _result.stats.peak_depth = std::max<std::uint64_t>(_result.stats.peak_depth, _stack.size());
                if (! enter_node())
                    return interrupted();
                _propagation.push(_store);
                _store.assign(*var, value);
                if (_propagation.fixpoint(_store, &_result.stats) == FixpointResult::failed) {
                    ++_result.stats.failures;
                    if (! backtrack())
                        return finish();
                }
            }
        }

    private:
        struct Choice
        {
            size_t var;
            Integer value;
            bool refuted;
        };

        const Problem & _problem;
        const SearchOptions & _options;
        DomainStore _store;
        Propagation _propagation;
        std::chrono::steady_clock::time_point _start;
        vector<Choice> _stack;
        SearchResult _result;
        bool _interrupted = false;

        // counts a node, or reports that a budget forbids it
        auto enter_node() -> bool
        {
            auto & limits = _options.limits;
            if (limits.nodes && _result.stats.nodes >= *limits.nodes)
                return false;
            if (limits.time && std::chrono::steady_clock::now() - _start >= *limits.time)
                return false;
            ++_result.stats.nodes;
            return true;
        }

        auto interrupted() -> SearchResult
        {
            _result.complete = false;
            return std::move(_result);
        }

        auto finish() -> SearchResult
        {
            if (_interrupted)
                _result.complete = false;
            return std::move(_result);
        }

        // undoes choices until a refutation branch survives; false once the tree is exhausted or a budget runs out
        auto backtrack() -> bool
        {
            while (! _stack.empty()) {
                auto & top = _stack.back();
                _propagation.pop(_store);
                if (_options.observer)
                    _options.observer->restored(_store);
                if (top.refuted) {
                    _stack.pop_back();
                    continue;
                }

                top.refuted = true;
                if (_options.observer)
                    _options.observer->choice_point(_store);
                if (! enter_node()) {
                    _interrupted = true;
                    return false;
                }
                _propagation.push(_store);
                _store.remove(top.var, top.value);
                if (_propagation.fixpoint(_store, &_result.stats) == FixpointResult::consistent)
                    return true;
                ++_result.stats.failures;
            }
            return false;
        }

        auto select_variable() const -> optional<size_t>
        {
            optional<size_t> best;
            for (size_t v = 0; v < _store.size(); ++v) {
                if (_store.assigned(v))
                    continue;
                if (! best)
                    best = v;
                else if (_options.strategy.var == VarHeuristic::min_dom) {
                    if (_store.domain(v).size() < _store.domain(*best).size())
                        best = v;
                }
                else if (_options.strategy.var == VarHeuristic::max_deg) {
                    if (_propagation.degree(v) > _propagation.degree(*best))
                        best = v;
                }
                if (best && _options.strategy.var == VarHeuristic::input)
                    break;
            }
            return best;
        }

        auto select_value(size_t v) const -> Integer
        {
            return _options.strategy.val == ValHeuristic::min ? _store.min(v) : _store.max(v);
        }

        void record_solution()
        {
            Solution s;
            for (size_t v = 0; v < _problem.output_count(); ++v)
                s.values.push_back(_store.value(v));
            _result.solutions.push_back(std::move(s));
            ++_result.stats.solutions;
        }
    };
}

auto xsolve::search(const Problem & problem, const SearchOptions & options) -> SearchResult
{
    Search s{problem, options};
    return s.run();
}

auto xsolve::search_first(const Problem & problem, const Strategy & strategy, const Limits & limits) -> SearchResult
{
    return search(problem, SearchOptions{strategy, limits, 1, nullptr});
}

auto xsolve::search_all(const Problem & problem, const Strategy & strategy, optional<std::uint64_t> limit, const Limits & limits)
    -> SearchResult
{
    return search(problem, SearchOptions{strategy, limits, limit, nullptr});
}
