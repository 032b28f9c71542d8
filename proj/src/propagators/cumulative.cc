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

    struct Segment
    {
        Wide start, end;
        Integer load;
    };

    /**
     * Time-table filtering. A task whose latest start precedes its earliest
     * end occupies [latest start, earliest end) in every solution; summing
     * these compulsory parts gives a resource profile. Overloaded profile
     * segments fail, and a task may not start anywhere that would overlap a
     * segment whose load from the other tasks leaves no room for it.
     */
    class Cumulative : public Propagator
    {
    public:
        using Propagator::Propagator;

    protected:
        auto prune(DomainStore & store) -> PruneResult override
        {
            auto & data = std::get<CumulativeData>(_spec.data);
            auto & origins = _spec.scope;
            auto n = origins.size();

            bool all_assigned = true;
            for (size_t i = 0; i < n; ++i)
                if (active(data, i) && data.heights[i] > data.capacity)
                    return contradiction(store);

            auto profile = build_profile(store, data);
            for (auto & s : profile)
                if (s.load > data.capacity)
                    return contradiction(store);

            for (size_t i = 0; i < n; ++i) {
                if (! active(data, i))
                    continue;
                Wide duration = data.durations[i];
                Wide est = store.min(origins[i]), lst = store.max(origins[i]);
                bool compulsory = lst < est + duration;
                for (auto & s : profile) {
                    Integer own = compulsory && lst <= s.start && s.end <= est + duration ? data.heights[i] : 0;
                    if (s.load - own + data.heights[i] <= data.capacity)
                        continue;
                    // starts in (s.start - duration, s.end) overlap the segment
                    auto lo = s.start - duration + 1, hi = s.end - 1;
                    lo = std::max(lo, Wide{store.min(origins[i])});
                    hi = std::min(hi, Wide{store.max(origins[i])});
                    if (lo <= hi)
                        store.remove_range(origins[i], static_cast<Integer>(lo), static_cast<Integer>(hi));
                    if (store.failed())
                        return PruneResult::failed;
                }
            }

            for (size_t i = 0; i < n; ++i)
                all_assigned = all_assigned && store.assigned(origins[i]);
            if (all_assigned) {
                // compulsory parts are now the whole schedule
                for (auto & s : build_profile(store, data))
                    if (s.load > data.capacity)
                        return contradiction(store);
                return PruneResult::subsumed;
            }
            return PruneResult::no_change;
        }

    private:
        static auto active(const CumulativeData & data, size_t i) -> bool
        {
            return data.durations[i] > 0 && data.heights[i] > 0;
        }

        auto build_profile(const DomainStore & store, const CumulativeData & data) const -> vector<Segment>
        {
            struct Event
            {
                Wide time;
                Integer delta;
            };
            vector<Event> events;
            for (size_t i = 0; i < _spec.scope.size(); ++i) {
                if (! active(data, i))
                    continue;
                Wide est = store.min(_spec.scope[i]), lst = store.max(_spec.scope[i]);
                Wide ect = est + data.durations[i];
                if (lst < ect) {
                    events.push_back({lst, data.heights[i]});
                    events.push_back({ect, -data.heights[i]});
                }
            }
            std::sort(events.begin(), events.end(), [](const Event & a, const Event & b) { return a.time < b.time; });

            vector<Segment> profile;
            Integer load = 0;
            for (size_t e = 0; e < events.size();) {
                auto t = events[e].time;
                while (e < events.size() && events[e].time == t)
                    load += events[e++].delta;
                if (e < events.size() && load > 0)
                    profile.push_back({t, events[e].time, load});
            }
            return profile;
        }
    };
}

auto xsolve::propagators::make_cumulative(const PropagatorSpec & spec) -> unique_ptr<Propagator>
{
    return std::make_unique<Cumulative>(spec);
}
