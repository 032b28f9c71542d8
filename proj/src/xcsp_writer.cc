#include <xsolve/xcsp_model.hh>

#include <fmt/core.h>

using namespace xsolve;

using std::string;
using std::string_view;
using std::vector;

namespace
{
    auto escape(string_view s) -> string
    {
        string result;
        for (auto c : s) {
            switch (c) {
                case '&': result += "&amp;"; break;
                case '<': result += "&lt;"; break;
                case '>': result += "&gt;"; break;
                case '"': result += "&quot;"; break;
                default: result += c;
            }
        }
        return result;
    }

    auto count_attr(string_view name, const std::optional<std::size_t> & count) -> string
    {
        return count ? fmt::format(" {}=\"{}\"", name, *count) : string{};
    }

    auto join(const vector<string> & words) -> string
    {
        string result;
        for (auto & w : words) {
            if (! result.empty())
                result += ' ';
            result += w;
        }
        return result;
    }
}

auto xsolve::to_string(const Param & p) -> string
{
    switch (p.kind) {
        case Param::Kind::integer: return fmt::format("{}", p.value);
        case Param::Kind::identifier:
        case Param::Kind::variable: return p.name;
        case Param::Kind::nil: return "nil";
        case Param::Kind::relop: return fmt::format("<{}/>", p.name);
        case Param::Kind::list: return "[ " + to_string(p.items) + (p.items.empty() ? "]" : " ]");
        case Param::Kind::record: return "{ " + to_string(p.items) + (p.items.empty() ? "}" : " }");
    }
    return {};
}

auto xsolve::to_string(const vector<Param> & params) -> string
{
    string result;
    for (auto & p : params) {
        if (! result.empty())
            result += ' ';
        result += to_string(p);
    }
    return result;
}

auto xsolve::write_instance(const InstanceModel & model) -> string
{
    string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<instance>\n";
    out += fmt::format("  <presentation name=\"{}\" format=\"XCSP 2.1\"/>\n", escape(model.name));

    out += fmt::format("  <domains{}>\n", count_attr("nbDomains", model.declared.domains));
    for (auto & d : model.domains)
        out += fmt::format("    <domain name=\"{}\"{}>{}</domain>\n", escape(d.name),
            count_attr("nbValues", d.declared_count), d.values.to_string());
    out += "  </domains>\n";

    out += fmt::format("  <variables{}>\n", count_attr("nbVariables", model.declared.variables));
    for (auto & v : model.variables)
        out += fmt::format("    <variable name=\"{}\" domain=\"{}\"/>\n", escape(v.name), escape(v.domain_ref));
    out += "  </variables>\n";

    if (! model.relations.empty() || model.declared.relations) {
        out += fmt::format("  <relations{}>\n", count_attr("nbRelations", model.declared.relations));
        for (auto & r : model.relations) {
            string tuples;
            for (std::size_t i = 0; i < r.tuples.size(); ++i) {
                if (i > 0)
                    tuples += '|';
                for (std::size_t j = 0; j < r.tuples[i].size(); ++j)
                    tuples += (j == 0 ? "" : " ") + std::to_string(r.tuples[i][j]);
            }
            out += fmt::format("    <relation name=\"{}\" arity=\"{}\"{} semantics=\"{}\">{}</relation>\n",
                escape(r.name), r.arity, count_attr("nbTuples", r.declared_count),
                r.semantics == Semantics::supports ? "supports" : "conflicts", tuples);
        }
        out += "  </relations>\n";
    }

    if (! model.predicates.empty() || model.declared.predicates) {
        out += fmt::format("  <predicates{}>\n", count_attr("nbPredicates", model.declared.predicates));
        for (auto & p : model.predicates) {
            vector<string> formals;
            for (auto & f : p.formal_params) {
                formals.push_back("int");
                formals.push_back(f);
            }
            out += fmt::format("    <predicate name=\"{}\">\n", escape(p.name));
            out += fmt::format("      <parameters>{}</parameters>\n", escape(join(formals)));
            out += fmt::format("      <expression>\n        <functional>{}</functional>\n      </expression>\n", escape(to_functional(p.body)));
            out += "    </predicate>\n";
        }
        out += "  </predicates>\n";
    }

    out += fmt::format("  <constraints{}>\n", count_attr("nbConstraints", model.declared.constraints));
    for (auto & c : model.constraints) {
        auto head = fmt::format("    <constraint name=\"{}\" arity=\"{}\" scope=\"{}\" reference=\"{}\"",
            escape(c.name), c.arity, escape(join(c.scope)), escape(c.reference));
        if (c.effective_params)
            // relational tokens are written as elements, so only names are escaped
            out += head + fmt::format(">\n      <parameters>{}</parameters>\n    </constraint>\n", to_string(*c.effective_params));
        else
            out += head + "/>\n";
    }
    out += "  </constraints>\n</instance>\n";
    return out;
}
