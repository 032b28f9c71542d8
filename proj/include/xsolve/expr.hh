#ifndef XSOLVE_EXPR_HH
#define XSOLVE_EXPR_HH

#include <xsolve/integer_set.hh>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace xsolve
{
    enum class Operator
    {
        neg, abs, add, sub, mul, div, mod, pow, min, max,
        eq, ne, ge, gt, le, lt,
        not_, and_, or_, xor_, iff, if_
    };

    [[nodiscard]] auto operator_name(Operator op) -> std::string_view;
    [[nodiscard]] auto operator_from_name(std::string_view name) -> std::optional<Operator>;
    [[nodiscard]] auto operator_arity(Operator op) -> int;
    [[nodiscard]] auto all_operators() -> std::span<const Operator>;

    struct VarRef
    {
        std::size_t index;

        auto operator<=>(const VarRef &) const = default;
    };

    /// What a formal parameter gets bound to when a predicate is instantiated.
    using Operand = std::variant<VarRef, Integer>;

    /**
     * An expression tree node. Param leaves appear only in predicate
     * bodies; substitution turns them into Var or Literal leaves.
     */
    struct Expr
    {
        enum class Kind
        {
            literal,
            param,
            var,
            apply
        };

        Kind kind = Kind::literal;
        // literal value, formal position for a param, variable index for a var
        Integer value = 0;
        Operator op = Operator::add;
        std::string name;
        std::vector<Expr> children;

        static auto literal(Integer v) -> Expr;
        static auto param(std::string name, std::size_t position) -> Expr;
        static auto var(std::size_t index) -> Expr;
        static auto apply(Operator op, std::vector<Expr> children) -> Expr;

        auto operator==(const Expr &) const -> bool = default;
    };

    /// An Expr with no Param leaves.
    class GroundExpr
    {
    public:
        /// Throws std::invalid_argument if the tree still holds a Param.
        explicit GroundExpr(Expr root);

        [[nodiscard]] auto root() const -> const Expr & { return _root; }

        /// Variables in order of first appearance, without repeats.
        [[nodiscard]] auto variables() const -> std::vector<std::size_t>;

        auto operator==(const GroundExpr &) const -> bool = default;

    private:
        Expr _root;
    };

    auto parse_functional(std::string_view text, std::span<const std::string> formal_params) -> Expr;

    /// Parses the `$index` variable notation written by to_functional on ground trees.
    auto parse_ground(std::string_view text) -> GroundExpr;

    auto to_functional(const Expr & e) -> std::string;
    inline auto to_functional(const GroundExpr & e) -> std::string { return to_functional(e.root()); }

    auto substitute(const Expr & body, std::size_t formal_count, std::span<const Operand> effective) -> GroundExpr;

    /**
     * Integer semantics with booleans as 0/1, nonzero being true. Returns
     * nullopt on division or modulo by zero, a negative exponent, or any
     * 64-bit overflow. Every child is evaluated, so an error anywhere in the
     * tree is an error for the whole expression, even under an untaken if
     * branch.
     */
    auto evaluate(const GroundExpr & expr, std::span<const Integer> assignment) -> std::optional<Integer>;
    auto evaluate(const Expr & expr, std::span<const Integer> assignment) -> std::optional<Integer>;
}

#endif
