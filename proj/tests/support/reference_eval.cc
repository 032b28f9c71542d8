#include "reference_eval.hh"

#include <limits>
#include <algorithm>

namespace xsolve::testing
{
    namespace
    {
        using Wide = __int128;

        auto fits(Wide v) -> bool
        {
            return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
        }

        auto truth(Wide v) -> bool
        {
            return v != 0;
        }
    }

    auto reference_operators() -> const std::vector<RefOperator> &
    {
        static const std::vector<RefOperator> ops{{"neg", 1}, {"abs", 1}, {"add", 2}, {"sub", 2}, {"mul", 2}, {"div", 2},
            {"mod", 2}, {"pow", 2}, {"min", 2}, {"max", 2}, {"eq", 2}, {"ne", 2}, {"ge", 2}, {"gt", 2}, {"le", 2},
            {"lt", 2}, {"not", 1}, {"and", 2}, {"or", 2}, {"xor", 2}, {"iff", 2}, {"if", 3}};
        return ops;
    }

    auto reference_evaluate(const RefExpr & e, const std::vector<std::int64_t> & slots) -> std::optional<std::int64_t>
    {
        if (e.kind == RefExpr::Kind::literal)
            return e.value;
        if (e.kind == RefExpr::Kind::slot)
            return slots.at(static_cast<std::size_t>(e.value));

        std::vector<Wide> a;
        bool error = false;
        for (auto & c : e.children) {
            auto v = reference_evaluate(c, slots);
            if (v)
                a.push_back(*v);
            else {
                error = true;
                a.push_back(0);
            }
        }
        if (error)
            return std::nullopt;

        Wide r = 0;
        auto & op = e.op;
        if (op == "neg")
            r = -a[0];
        else if (op == "abs")
            r = a[0] < 0 ? -a[0] : a[0];
        else if (op == "add")
            r = a[0] + a[1];
        else if (op == "sub")
            r = a[0] - a[1];
        else if (op == "mul")
            r = a[0] * a[1];
        else if (op == "div" || op == "mod") {
            if (a[1] == 0)
                return std::nullopt;
            r = op == "div" ? a[0] / a[1] : a[0] % a[1];
        }
        else if (op == "pow") {
            if (a[1] < 0)
                return std::nullopt;
            if (a[0] == 0)
                r = a[1] == 0 ? 1 : 0;
            else if (a[0] == 1 || a[0] == -1)
                r = (a[0] == -1 && a[1] % 2 == 1) ? -1 : 1;
            else {
                // |base| >= 2 leaves the 64-bit range within 64 steps
                r = 1;
                for (Wide i = 0; i < a[1]; ++i) {
                    r *= a[0];
                    if (! fits(r))
                        return std::nullopt;
                }
            }
        }
        else if (op == "min")
            r = std::min(a[0], a[1]);
        else if (op == "max")
            r = std::max(a[0], a[1]);
        else if (op == "eq")
            r = a[0] == a[1];
        else if (op == "ne")
            r = a[0] != a[1];
        else if (op == "ge")
            r = a[0] >= a[1];
        else if (op == "gt")
            r = a[0] > a[1];
        else if (op == "le")
            r = a[0] <= a[1];
        else if (op == "lt")
            r = a[0] < a[1];
        else if (op == "not")
            r = ! truth(a[0]);
        else if (op == "and")
            r = truth(a[0]) && truth(a[1]);
        else if (op == "or")
            r = truth(a[0]) || truth(a[1]);
        else if (op == "xor")
            r = truth(a[0]) != truth(a[1]);
        else if (op == "iff")
            r = truth(a[0]) == truth(a[1]);
        else if (op == "if")
            r = truth(a[0]) ? a[1] : a[2];
        else
            return std::nullopt;

        if (! fits(r))
            return std::nullopt;
        return static_cast<std::int64_t>(r);
    }

    auto render(const RefExpr & e, const std::vector<std::string> & slot_names) -> std::string
    {
        if (e.kind == RefExpr::Kind::literal)
            return std::to_string(e.value);
        if (e.kind == RefExpr::Kind::slot)
            return slot_names.at(static_cast<std::size_t>(e.value));
        std::string s = e.op + "(";
        for (std::size_t i = 0; i < e.children.size(); ++i)
            s += (i ? "," : "") + render(e.children[i], slot_names);
        return s + ")";
    }

    auto random_expr(std::mt19937_64 & rng, int depth, int slots, std::int64_t literal_lo, std::int64_t literal_hi) -> RefExpr
    {
        std::uniform_int_distribution<int> coin(0, 99);
        if (depth == 0 || coin(rng) < 20) {
            RefExpr leaf;
            if (slots > 0 && coin(rng) < 65) {
                leaf.kind = RefExpr::Kind::slot;
                leaf.value = std::uniform_int_distribution<int>(0, slots - 1)(rng);
            }
            else {
                leaf.kind = RefExpr::Kind::literal;
                leaf.value = std::uniform_int_distribution<std::int64_t>(literal_lo, literal_hi)(rng);
            }
            return leaf;
        }
        auto & ops = reference_operators();
        auto & op = ops[std::uniform_int_distribution<std::size_t>(0, ops.size() - 1)(rng)];
        RefExpr node;
        node.kind = RefExpr::Kind::apply;
        node.op = op.name;
        for (int i = 0; i < op.arity; ++i)
            node.children.push_back(random_expr(rng, depth - 1, slots, literal_lo, literal_hi));
        return node;
    }
}
