#include "summary.hh"

#include <optional>

namespace xsolve::testing
{
    namespace
    {
        template <typename T>
        auto count(const std::optional<T> & c) -> std::string
        {
            return c ? std::to_string(*c) : "-";
        }
    }

    auto structural_summary(const InstanceModel & m) -> std::string
    {
        std::string s = "instance " + (m.name.empty() ? std::string{"-"} : m.name) + "\n";
        s += "declared domains=" + count(m.declared.domains) + " variables=" + count(m.declared.variables) +
            " relations=" + count(m.declared.relations) + " predicates=" + count(m.declared.predicates) +
            " constraints=" + count(m.declared.constraints) + "\n";
        s += "sizes domains=" + std::to_string(m.domains.size()) + " variables=" + std::to_string(m.variables.size()) +
            " relations=" + std::to_string(m.relations.size()) + " predicates=" + std::to_string(m.predicates.size()) +
            " constraints=" + std::to_string(m.constraints.size()) + "\n";
        for (auto & d : m.domains)
            s += "domain " + d.name + " count=" + count(d.declared_count) + " values=" + d.values.to_string() + "\n";
        for (auto & v : m.variables)
            s += "variable " + v.name + " domain=" + v.domain_ref + "\n";
        for (auto & r : m.relations) {
            s += "relation " + r.name + " arity=" + std::to_string(r.arity) + " semantics=" +
                (r.semantics == Semantics::supports ? "supports" : "conflicts") + " count=" + count(r.declared_count) + " tuples=";
            for (std::size_t t = 0; t < r.tuples.size(); ++t) {
                s += t ? "|" : "";
                for (std::size_t i = 0; i < r.tuples[t].size(); ++i)
                    s += (i ? " " : "") + std::to_string(r.tuples[t][i]);
            }
            s += "\n";
        }
        for (auto & p : m.predicates) {
            s += "predicate " + p.name + " formals=";
            for (std::size_t i = 0; i < p.formal_params.size(); ++i)
                s += (i ? "," : "") + p.formal_params[i];
            s += " body=" + to_functional(p.body) + "\n";
        }
        for (auto & c : m.constraints) {
            s += "constraint " + c.name + " arity=" + std::to_string(c.arity) + " scope=";
            for (std::size_t i = 0; i < c.scope.size(); ++i)
                s += (i ? "," : "") + c.scope[i];
            s += " reference=" + c.reference + " params=" + (c.effective_params ? to_string(*c.effective_params) : "-") + "\n";
        }
        return s;
    }
}
