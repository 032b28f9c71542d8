#include <xsolve/expr.hh>

#include <fmt/core.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>
#include <stdexcept>
#include <utility>

using namespace xsolve;

using std::move;
using std::nullopt;
using std::optional;
using std::span;
using std::string;
using std::string_view;
using std::vector;

namespace
{
    struct OperatorInfo
    {
        Operator op;
        string_view name;
        int arity;
    };

    constexpr std::array<OperatorInfo, 22> operator_table{{
        {Operator::neg, "neg", 1},
        {Operator::abs, "abs", 1},
        {Operator::add, "add", 2},
        {Operator::sub, "sub", 2},
        {Operator::mul, "mul", 2},
        {Operator::div, "div", 2},
        {Operator::mod, "mod", 2},
        {Operator::pow, "pow", 2},
        {Operator::min, "min", 2},
        {Operator::max, "max", 2},
        {Operator::eq, "eq", 2},
        {Operator::ne, "ne", 2},
        {Operator::ge, "ge", 2},
        {Operator::gt, "gt", 2},
        {Operator::le, "le", 2},
        {Operator::lt, "lt", 2},
        {Operator::not_, "not", 1},
        {Operator::and_, "and", 2},
        {Operator::or_, "or", 2},
        {Operator::xor_, "xor", 2},
        {Operator::iff, "iff", 2},
        {Operator::if_, "if", 3},
    }};

    constexpr auto make_operator_list()
    {
        std::array<Operator, operator_table.size()> result{};
        for (std::size_t i = 0; i < operator_table.size(); ++i)
            result[i] = operator_table[i].op;
        return result;
    }

    constexpr auto operator_list = make_operator_list();

    auto info(Operator op) -> const OperatorInfo &
    {
        return operator_table[static_cast<std::size_t>(op)];
    }

    class FunctionalParser
    {
    public:
        FunctionalParser(string_view text, span<const string> formals, bool ground) :
            _text(text), _formals(formals), _ground(ground)
        {
        }

        auto parse() -> Expr
        {
            auto e = parse_term();
            skip_space();
            if (_pos != _text.size())
                fail(fmt::format("unexpected '{}'", _text[_pos]));
            return e;
        }

    private:
        string_view _text;
        span<const string> _formals;
        bool _ground;
        std::size_t _pos = 0;

        [[noreturn]] void fail(const string & what) const
        {
            throw FormatError(fmt::format("in expression '{}' at offset {}: {}", _text, _pos, what));
        }

        void skip_space()
        {
            while (_pos < _text.size() && std::isspace(static_cast<unsigned char>(_text[_pos])))
                ++_pos;
        }

        auto peek() -> char
        {
            skip_space();
            return _pos < _text.size() ? _text[_pos] : '\0';
        }

        void expect(char c)
        {
            if (peek() != c)
                fail(_pos < _text.size() ? fmt::format("expected '{}' but found '{}'", c, _text[_pos]) : fmt::format("expected '{}' at end of text", c));
            ++_pos;
        }

        auto parse_term() -> Expr
        {
            auto c = peek();
            if (c == '\0')
                fail("unexpected end of text");

            if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
                auto start = _pos++;
                while (_pos < _text.size() && std::isdigit(static_cast<unsigned char>(_text[_pos])))
                    ++_pos;
                return Expr::literal(parse_integer(_text.substr(start, _pos - start)));
            }

            if (_ground && c == '$') {
                auto start = ++_pos;
                while (_pos < _text.size() && std::isdigit(static_cast<unsigned char>(_text[_pos])))
                    ++_pos;
                if (start == _pos)
                    fail("expected variable index after '$'");
                return Expr::var(static_cast<std::size_t>(parse_integer(_text.substr(start, _pos - start))));
            }

            if (! (std::isalpha(static_cast<unsigned char>(c)) || c == '_'))
                fail(fmt::format("unexpected '{}'", c));

            auto start = _pos;
            while (_pos < _text.size() && (std::isalnum(static_cast<unsigned char>(_text[_pos])) || _text[_pos] == '_'))
                ++_pos;
            auto ident = _text.substr(start, _pos - start);

            if (peek() == '(') {
                auto op = operator_from_name(ident);
                if (! op)
                    fail(fmt::format("unknown operator '{}'", ident));
                ++_pos;
                vector<Expr> args;
                if (peek() != ')') {
                    args.push_back(parse_term());
                    while (peek() == ',') {
                        ++_pos;
                        args.push_back(parse_term());
                    }
                }
                expect(')');
                if (static_cast<int>(args.size()) != operator_arity(*op))
                    fail(fmt::format("operator '{}' expects {} argument(s), got {}", ident, operator_arity(*op), args.size()));
                return Expr::apply(*op, move(args));
            }

            if (_ground)
                fail(fmt::format("unexpected identifier '{}' in ground expression", ident));

            auto it = std::find(_formals.begin(), _formals.end(), ident);
            if (it == _formals.end())
                fail(fmt::format("identifier '{}' is not a declared parameter", ident));
            return Expr::param(string{ident}, static_cast<std::size_t>(it - _formals.begin()));
        }
    };

    auto has_param(const Expr & e) -> bool
    {
        if (e.kind == Expr::Kind::param)
            return true;
        return std::any_of(e.children.begin(), e.children.end(), has_param);
    }

    void collect_vars(const Expr & e, vector<std::size_t> & out)
    {
        if (e.kind == Expr::Kind::var) {
            auto idx = static_cast<std::size_t>(e.value);
            if (std::find(out.begin(), out.end(), idx) == out.end())
                out.push_back(idx);
        }
        for (auto & c : e.children)
            collect_vars(c, out);
    }

    auto substitute_tree(const Expr & e, span<const Operand> effective) -> Expr
    {
        switch (e.kind) {
            case Expr::Kind::literal:
            case Expr::Kind::var:
                return e;
            case Expr::Kind::param: {
                auto & bound = effective[static_cast<std::size_t>(e.value)];
                if (auto v = std::get_if<VarRef>(&bound))
                    return Expr::var(v->index);
                return Expr::literal(std::get<Integer>(bound));
            }
            case Expr::Kind::apply: {
                vector<Expr> children;
                children.reserve(e.children.size());
                for (auto & c : e.children)
                    children.push_back(substitute_tree(c, effective));
                return Expr::apply(e.op, move(children));
            }
        }
        throw std::logic_error("bad expression kind");
    }

    auto truth(Integer v) -> Integer
    {
        return v != 0 ? 1 : 0;
    }

    auto checked_pow(Integer base, Integer exponent) -> optional<Integer>
    {
        if (exponent < 0)
            return nullopt;
        if (base == 0)
            return exponent == 0 ? 1 : 0;
        if (base == 1)
            return 1;
        if (base == -1)
            return exponent % 2 == 0 ? 1 : -1;
        // |base| >= 2 overflows within 63 steps
        Integer result = 1;
        for (; exponent > 0; --exponent)
            if (__builtin_mul_overflow(result, base, &result))
                return nullopt;
        return result;
    }

    auto eval(const Expr & e, span<const Integer> assignment) -> optional<Integer>
    {
        switch (e.kind) {
            case Expr::Kind::literal:
                return e.value;
            case Expr::Kind::var:
                return assignment[static_cast<std::size_t>(e.value)];
            case Expr::Kind::param:
                throw std::invalid_argument("cannot evaluate an expression with unbound parameters");
            case Expr::Kind::apply:
                break;
        }

        std::array<Integer, 3> args{};
        bool ok = true;
        for (std::size_t i = 0; i < e.children.size(); ++i) {
            auto v = eval(e.children[i], assignment);
            if (v)
                args[i] = *v;
            else
                ok = false;
        }
        if (! ok)
            return nullopt;

        auto [a, b, c] = args;
        Integer r = 0;
        switch (e.op) {
            case Operator::neg:
                if (__builtin_sub_overflow(Integer{0}, a, &r))
                    return nullopt;
                return r;
            case Operator::abs:
                if (a >= 0)
                    return a;
                if (__builtin_sub_overflow(Integer{0}, a, &r))
                    return nullopt;
                return r;
            case Operator::add:
                if (__builtin_add_overflow(a, b, &r))
                    return nullopt;
                return r;
            case Operator::sub:
                if (__builtin_sub_overflow(a, b, &r))
                    return nullopt;
                return r;
            case Operator::mul:
                if (__builtin_mul_overflow(a, b, &r))
                    return nullopt;
                return r;
            case Operator::div:
                if (b == 0 || (a == std::numeric_limits<Integer>::min() && b == -1))
                    return nullopt;
                return a / b;
            case Operator::mod:
                if (b == 0)
                    return nullopt;
                if (b == -1)
                    return 0;
                return a % b;
            case Operator::pow: return checked_pow(a, b);
            case Operator::min: return std::min(a, b);
            case Operator::max: return std::max(a, b);
            case Operator::eq: return Integer{a == b};
            case Operator::ne: return Integer{a != b};
            case Operator::ge: return Integer{a >= b};
            case Operator::gt: return Integer{a > b};
            case Operator::le: return Integer{a <= b};
            case Operator::lt: return Integer{a < b};
            case Operator::not_: return Integer{a == 0};
            case Operator::and_: return truth(a) & truth(b);
            case Operator::or_: return truth(a) | truth(b);
            case Operator::xor_: return truth(a) ^ truth(b);
            case Operator::iff: return Integer{truth(a) == truth(b)};
            case Operator::if_: return a != 0 ? b : c;
        }
        throw std::logic_error("bad operator");
    }
}

auto xsolve::operator_name(Operator op) -> string_view
{
    return info(op).name;
}

auto xsolve::operator_from_name(string_view name) -> optional<Operator>
{
    for (auto & i : operator_table)
        if (i.name == name)
            return i.op;
    return nullopt;
}

auto xsolve::operator_arity(Operator op) -> int
{
    return info(op).arity;
}

auto xsolve::all_operators() -> span<const Operator>
{
    return operator_list;
}

auto Expr::literal(Integer v) -> Expr
{
    Expr e;
    e.kind = Kind::literal;
    e.value = v;
    return e;
}

auto Expr::param(string name, std::size_t position) -> Expr
{
    Expr e;
    e.kind = Kind::param;
    e.value = static_cast<Integer>(position);
    e.name = move(name);
    return e;
}

auto Expr::var(std::size_t index) -> Expr
{
    Expr e;
    e.kind = Kind::var;
    e.value = static_cast<Integer>(index);
    return e;
}

auto Expr::apply(Operator op, vector<Expr> children) -> Expr
{
    if (static_cast<int>(children.size()) != operator_arity(op))
        throw std::invalid_argument(fmt::format("operator '{}' expects {} argument(s), got {}",
            operator_name(op), operator_arity(op), children.size()));
    Expr e;
    e.kind = Kind::apply;
    e.op = op;
    e.children = move(children);
    return e;
}

GroundExpr::GroundExpr(Expr root) :
    _root(move(root))
{
    if (has_param(_root))
        throw std::invalid_argument("ground expression contains an unbound parameter");
}

auto GroundExpr::variables() const -> vector<std::size_t>
{
    vector<std::size_t> result;
    collect_vars(_root, result);
    return result;
}

auto xsolve::parse_functional(string_view text, span<const string> formal_params) -> Expr
{
    return FunctionalParser{text, formal_params, false}.parse();
}

auto xsolve::parse_ground(string_view text) -> GroundExpr
{
    return GroundExpr{FunctionalParser{text, {}, true}.parse()};
}

auto xsolve::to_functional(const Expr & e) -> string
{
    switch (e.kind) {
        case Expr::Kind::literal: return fmt::format("{}", e.value);
        case Expr::Kind::param: return e.name;
        case Expr::Kind::var: return fmt::format("${}", e.value);
        case Expr::Kind::apply: break;
    }
    string result{operator_name(e.op)};
    result += '(';
    for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i > 0)
            result += ',';
        result += to_functional(e.children[i]);
    }
    result += ')';
    return result;
}

auto xsolve::substitute(const Expr & body, std::size_t formal_count, span<const Operand> effective) -> GroundExpr
{
    if (effective.size() != formal_count)
        throw ArityError(fmt::format("predicate takes {} parameter(s) but {} were supplied", formal_count, effective.size()));
    return GroundExpr{substitute_tree(body, effective)};
}

auto xsolve::evaluate(const GroundExpr & expr, span<const Integer> assignment) -> optional<Integer>
{
    return eval(expr.root(), assignment);
}

auto xsolve::evaluate(const Expr & expr, span<const Integer> assignment) -> optional<Integer>
{
    return eval(expr, assignment);
}
