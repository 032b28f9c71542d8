#ifndef XSOLVE_TESTS_REFERENCE_EVAL_HH
#define XSOLVE_TESTS_REFERENCE_EVAL_HH

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace xsolve::testing
{
    /**
     * Expression tree kept separate from the library's own Expr so that
     * tests can evaluate it without going through any library code.
     * A leaf is either a literal or a slot, which is an index into the
     * assignment passed to reference_evaluate.
     */
    struct RefExpr
    {
        enum class Kind
        {
            literal,
            slot,
            apply
        };

        Kind kind = Kind::literal;
        std::int64_t value = 0;
        std::string op;
        std::vector<RefExpr> children;
    };

    struct RefOperator
    {
        const char * name;
        int arity;
    };

    auto reference_operators() -> const std::vector<RefOperator> &;

    auto reference_evaluate(const RefExpr & e, const std::vector<std::int64_t> & slots) -> std::optional<std::int64_t>;

    /// Functional text with slot i printed as slot_names[i].
    auto render(const RefExpr & e, const std::vector<std::string> & slot_names) -> std::string;

    auto random_expr(std::mt19937_64 & rng, int depth, int slots, std::int64_t literal_lo, std::int64_t literal_hi) -> RefExpr;
}

#endif
