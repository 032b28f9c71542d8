#include <xsolve/compiler.hh>

#include <json.hpp>

#include <fmt/core.h>

using namespace xsolve;

using nlohmann::json;
using std::move;
using std::string;
using std::string_view;

namespace
{
    auto kind_from_name(string_view name) -> PropagatorKind
    {
        for (auto k : all_propagator_kinds())
            if (kind_name(k) == name)
                return k;
        throw FormatError(fmt::format("unknown propagator kind '{}'", name));
    }

    auto set_to_json(const IntegerSet & s) -> json
    {
        auto result = json::array();
        for (auto & i : s.intervals())
            result.push_back({i.lo, i.hi});
        return result;
    }

    auto set_from_json(const json & j) -> IntegerSet
    {
        std::vector<Interval> intervals;
        for (auto & i : j)
            intervals.push_back({i.at(0).get<Integer>(), i.at(1).get<Integer>()});
        return IntegerSet::from_intervals(move(intervals));
    }

    struct DataWriter
    {
        json & out;

        void operator()(const std::monostate &) const {}
        void operator()(const TableData & d) const { out["tuples"] = d.tuples; }
        void operator()(const ExprData & d) const { out["expr"] = to_functional(d.expr); }
        void operator()(const LinearData & d) const
        {
            out["coeffs"] = d.coeffs;
            out["op"] = relop_name(d.op);
            out["constant"] = d.constant;
        }
        void operator()(const CountData & d) const
        {
            out["values"] = set_to_json(d.values);
            out["bound"] = d.bound;
        }
        void operator()(const ElementData & d) const { out["base"] = d.base; }
        void operator()(const CardinalityData & d) const { out["values"] = d.values; }
        void operator()(const CumulativeData & d) const
        {
            out["durations"] = d.durations;
            out["heights"] = d.heights;
            out["capacity"] = d.capacity;
        }
    };
}

auto xsolve::to_debug_string(const PropagatorSpec & spec) -> string
{
    json j;
    j["kind"] = kind_name(spec.kind);
    j["scope"] = spec.scope;
    j["origin"] = spec.origin;
    json data = json::object();
    std::visit(DataWriter{data}, spec.data);
    j["data_type"] = spec.data.index();
    j["data"] = data;
    return j.dump();
}

auto xsolve::spec_from_debug_string(string_view text) -> PropagatorSpec
{
    json j;
    try {
        j = json::parse(text);
    }
    catch (const json::exception & e) {
        throw FormatError(fmt::format("bad propagator debug text: {}", e.what()));
    }

    try {
        PropagatorSpec spec;
        spec.kind = kind_from_name(j.at("kind").get<string>());
        spec.scope = j.at("scope").get<std::vector<std::size_t>>();
        spec.origin = j.at("origin").get<string>();
        auto & d = j.at("data");
        switch (j.at("data_type").get<std::size_t>()) {
            case 0: break;
            case 1: spec.data = TableData{d.at("tuples").get<std::vector<Tuple>>()}; break;
            case 2: spec.data = ExprData{parse_ground(d.at("expr").get<string>())}; break;
            case 3: {
                auto op = relop_from_name(d.at("op").get<string>());
                if (! op)
                    throw FormatError("bad relational operator in propagator debug text");
                spec.data = LinearData{d.at("coeffs").get<std::vector<Integer>>(), *op, d.at("constant").get<Integer>()};
                break;
            }
            case 4: spec.data = CountData{set_from_json(d.at("values")), d.at("bound").get<Integer>()}; break;
            case 5: spec.data = ElementData{d.at("base").get<Integer>()}; break;
            case 6: spec.data = CardinalityData{d.at("values").get<std::vector<Integer>>()}; break;
            case 7:
                spec.data = CumulativeData{d.at("durations").get<std::vector<Integer>>(),
                    d.at("heights").get<std::vector<Integer>>(), d.at("capacity").get<Integer>()};
                break;
            default: throw FormatError("bad data type in propagator debug text");
        }
        return spec;
    }
    catch (const json::exception & e) {
        throw FormatError(fmt::format("bad propagator debug text: {}", e.what()));
    }
}
