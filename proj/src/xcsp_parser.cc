#include <xsolve/xcsp_model.hh>

#include <boost/property_tree/detail/rapidxml.hpp>

#include <fmt/core.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>
#include <string>

using namespace xsolve;

namespace rapidxml = boost::property_tree::detail::rapidxml;

using std::move;
using std::optional;
using std::string;
using std::string_view;
using std::vector;

namespace
{
    using Node = rapidxml::xml_node<char>;

    constexpr std::array<string_view, 6> relop_names{"eq", "ne", "ge", "gt", "le", "lt"};

    auto is_relop(string_view s) -> bool
    {
        return std::find(relop_names.begin(), relop_names.end(), s) != relop_names.end();
    }

    auto trim(string_view s) -> string_view
    {
        while (! s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
            s.remove_prefix(1);
        while (! s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
            s.remove_suffix(1);
        return s;
    }

    auto split_whitespace(string_view s) -> vector<string>
    {
        vector<string> result;
        std::size_t pos = 0;
        while (pos < s.size()) {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
                ++pos;
            auto end = pos;
            while (end < s.size() && ! std::isspace(static_cast<unsigned char>(s[end])))
                ++end;
            if (end > pos)
                result.emplace_back(s.substr(pos, end - pos));
            pos = end;
        }
        return result;
    }

    // Raw tokens: brackets, braces, whitespace separated atoms, and "<op/>" relational elements.
    void tokenise_params(string_view text, vector<string> & out)
    {
        std::size_t pos = 0;
        while (pos < text.size()) {
            auto c = text[pos];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
                continue;
            }
            if (c == '[' || c == ']' || c == '{' || c == '}') {
                out.emplace_back(1, c);
                ++pos;
                continue;
            }
            if (c == '<') {
                auto close = text.find('>', pos);
                if (close == string_view::npos)
                    throw FormatError(fmt::format("unterminated element in parameters '{}'", text));
                out.emplace_back(text.substr(pos, close - pos + 1));
                pos = close + 1;
                continue;
            }
            auto end = pos;
            while (end < text.size() && ! std::isspace(static_cast<unsigned char>(text[end])) && string_view{"[]{}<"}.find(text[end]) == string_view::npos)
                ++end;
            out.emplace_back(text.substr(pos, end - pos));
            pos = end;
        }
    }

    auto looks_numeric(string_view t) -> bool
    {
        if (! t.empty() && (t.front() == '-' || t.front() == '+'))
            t.remove_prefix(1);
        return ! t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    }

    auto build_params(const vector<string> & tokens, std::size_t & pos, char closer) -> vector<Param>
    {
        vector<Param> result;
        while (pos < tokens.size()) {
            auto & t = tokens[pos++];
            if (t == "]" || t == "}") {
                if (t[0] != closer)
                    throw FormatError(fmt::format("unbalanced '{}' in parameters", t));
                return result;
            }
            if (t == "[" || t == "{") {
                Param p;
                p.kind = t == "[" ? Param::Kind::list : Param::Kind::record;
                p.items = build_params(tokens, pos, t == "[" ? ']' : '}');
                result.push_back(move(p));
            }
            else if (t.front() == '<') {
                string_view body = t;
                body.remove_prefix(1);
                body.remove_suffix(1);
                body = trim(body);
                if (! body.empty() && body.back() == '/')
                    body.remove_suffix(1);
                body = trim(body);
                if (! is_relop(body))
                    throw FormatError(fmt::format("unknown relational element {} in parameters", t));
                Param p;
                p.kind = Param::Kind::relop;
                p.name = string{body};
                result.push_back(move(p));
            }
            else if (t == "nil") {
                Param p;
                p.kind = Param::Kind::nil;
                result.push_back(move(p));
            }
            else if (looks_numeric(t))
                result.push_back(Param::integer(parse_integer(t)));
            else
                result.push_back(Param::identifier(t));
        }
        if (closer != '\0')
            throw FormatError(fmt::format("missing '{}' in parameters", closer));
        return result;
    }

    auto params_from_tokens(const vector<string> & tokens) -> vector<Param>
    {
        std::size_t pos = 0;
        return build_params(tokens, pos, '\0');
    }

    class DocumentReader
    {
    public:
        explicit DocumentReader(string_view document) :
            _original(document),
            _buffer(document.begin(), document.end())
        {
            _buffer.push_back('\0');
        }

        auto read() -> InstanceModel
        {
            try {
                _doc.parse<rapidxml::parse_validate_closing_tags>(_buffer.data());
            }
            catch (const rapidxml::parse_error & e) {
                auto [line, col] = position_of(e.where<char>());
                throw ParseError(e.what(), line, col);
            }

            Node * root = nullptr;
            for (auto n = _doc.first_node(); n; n = n->next_sibling())
                if (n->type() == rapidxml::node_element) {
                    if (root)
                        fail(n, "more than one root element");
                    root = n;
                }
            if (! root)
                throw StructuralError("document has no root element");
            if (name_of(root) != "instance")
                fail(root, fmt::format("root element is <{}>, expected <instance>", name_of(root)));

            read_instance(root);
            return move(_model);
        }

    private:
        // rapidxml writes terminators into _buffer, so positions are counted in the untouched text
        string_view _original;
        vector<char> _buffer;
        rapidxml::xml_document<char> _doc;
        InstanceModel _model;
        std::set<string> _constraint_names;

        auto position_of(const char * where) const -> std::pair<int, int>
        {
            int line = 1, col = 1;
            const char * begin = _buffer.data();
            if (where < begin || where >= begin + _buffer.size())
                return {line, col};
            auto offset = static_cast<std::size_t>(where - begin);
            for (std::size_t i = 0; i < offset && i < _original.size(); ++i) {
                if (_original[i] == '\n') {
                    ++line;
                    col = 1;
                }
                else
                    ++col;
            }
            return {line, col};
        }

        auto where(const Node * n) const -> string
        {
            auto [line, col] = position_of(n->name());
            return fmt::format("{}:{}", line, col);
        }

        [[noreturn]] void fail(const Node * n, const string & what) const
        {
            throw StructuralError(fmt::format("{}: {}", where(n), what));
        }

        static auto name_of(const Node * n) -> string_view
        {
            return {n->name(), n->name_size()};
        }

        static auto attribute(const Node * n, string_view name) -> optional<string>
        {
            if (auto a = n->first_attribute(name.data(), name.size()))
                return string{a->value(), a->value_size()};
            return std::nullopt;
        }

        auto required(const Node * n, string_view attr) const -> string
        {
            auto a = attribute(n, attr);
            if (! a)
                fail(n, fmt::format("<{}> is missing the '{}' attribute", name_of(n), attr));
            return *a;
        }

        auto count_attribute(const Node * n, string_view attr) -> optional<std::size_t>
        {
            auto a = attribute(n, attr);
            if (! a) {
                _model.warnings.push_back(fmt::format("{}: <{}> has no '{}' attribute", where(n), name_of(n), attr));
                return std::nullopt;
            }
            auto v = integer_attribute(n, attr, *a);
            if (v < 0)
                fail(n, fmt::format("'{}' must be nonnegative", attr));
            return static_cast<std::size_t>(v);
        }

        auto integer_attribute(const Node * n, string_view attr, const string & text) const -> Integer
        {
            try {
                return parse_integer(trim(text));
            }
            catch (const FormatError & e) {
                fail(n, fmt::format("attribute '{}': {}", attr, e.what()));
            }
        }

        void check_attributes(const Node * n, std::initializer_list<string_view> known)
        {
            for (auto a = n->first_attribute(); a; a = a->next_attribute()) {
                string_view an{a->name(), a->name_size()};
                if (an.starts_with("xmlns") || an.find(':') != string_view::npos)
                    continue;
                if (std::find(known.begin(), known.end(), an) == known.end())
                    _model.warnings.push_back(fmt::format("{}: ignoring unknown attribute '{}' on <{}>", where(n), an, name_of(n)));
            }
        }

        static auto text_of(const Node * n) -> string
        {
            string result;
            for (auto c = n->first_node(); c; c = c->next_sibling())
                if (c->type() == rapidxml::node_data || c->type() == rapidxml::node_cdata)
                    result.append(c->value(), c->value_size());
            return result;
        }

        static auto elements(const Node * n)
        {
            vector<Node *> result;
            for (auto c = n->first_node(); c; c = c->next_sibling())
                if (c->type() == rapidxml::node_element)
                    result.push_back(c);
            return result;
        }

        // text content parsed by one of the abridged-notation parsers, with position on failure
        template <typename F>
        auto abridged(const Node * n, F && f) const
        {
            try {
                return f();
            }
            catch (const FormatError & e) {
                throw FormatError(fmt::format("{}: {}", where(n), e.what()));
            }
        }

        void reject_extension(const Node * n, const string & what) const
        {
            throw UnsupportedExtension(fmt::format("{} ({})", what, where(n)));
        }

        void read_instance(Node * root)
        {
            check_attributes(root, {});
            Node * domains = nullptr, * variables = nullptr, * relations = nullptr, * predicates = nullptr, * constraints = nullptr;
            vector<Node *> loose_constraints;

            for (auto n : elements(root)) {
                auto tag = name_of(n);
                auto take = [&](Node *& slot) {
                    if (slot)
                        fail(n, fmt::format("duplicate <{}> section", tag));
                    slot = n;
                };
                if (tag == "presentation")
                    read_presentation(n);
                else if (tag == "domains")
                    take(domains);
                else if (tag == "variables")
                    take(variables);
                else if (tag == "relations")
                    take(relations);
                else if (tag == "predicates")
                    take(predicates);
                else if (tag == "constraints")
                    take(constraints);
                else if (tag == "constraint")
                    loose_constraints.push_back(n);
                else if (tag == "weightedConstraints")
                    reject_extension(n, "weighted constraints (WCSP)");
                else if (tag == "quantification" || tag == "blocks" || tag == "block")
                    reject_extension(n, "quantified constraints (QCSP)");
                else
                    _model.warnings.push_back(fmt::format("{}: ignoring unknown element <{}>", where(n), tag));
            }

            if (! variables)
                fail(root, "missing mandatory <variables> section");
            if (! constraints && loose_constraints.empty())
                fail(root, "missing mandatory <constraints> section");

            if (domains)
                read_domains(domains);
            read_variables(variables);
            if (relations)
                read_relations(relations);
            if (predicates)
                read_predicates(predicates);
            if (constraints)
                read_constraints(constraints);
            for (auto n : loose_constraints) {
                _model.warnings.push_back(fmt::format("{}: <constraint> outside a <constraints> section", where(n)));
                read_constraint(n);
            }
        }

        void read_presentation(Node * n)
        {
            check_attributes(n, {"name", "description", "maxConstraintArity", "minViolatedConstraints", "nbSolutions", "solution", "type", "format"});
            if (auto type = attribute(n, "type")) {
                if (*type == "WCSP")
                    reject_extension(n, "weighted constraints (WCSP)");
                if (type->starts_with("QCSP"))
                    reject_extension(n, "quantified constraints (QCSP)");
                if (*type != "CSP")
                    _model.warnings.push_back(fmt::format("{}: unrecognised presentation type '{}'", where(n), *type));
            }
            if (auto name = attribute(n, "name"))
                _model.name = *name;
        }

        void read_domains(Node * section)
        {
            check_attributes(section, {"nbDomains"});
            _model.declared.domains = count_attribute(section, "nbDomains");
            std::set<string> seen;
            for (auto n : elements(section)) {
                if (name_of(n) != "domain")
                    fail(n, fmt::format("unexpected <{}> in <domains>", name_of(n)));
                check_attributes(n, {"name", "nbValues"});
                DomainDef d;
                d.name = required(n, "name");
                if (! seen.insert(d.name).second)
                    fail(n, fmt::format("duplicate domain name '{}'", d.name));
                d.declared_count = count_attribute(n, "nbValues");
                auto text = text_of(n);
                d.values = abridged(n, [&] { return parse_integer_set(text); });
                _model.domains.push_back(move(d));
            }
        }

        void read_variables(Node * section)
        {
            check_attributes(section, {"nbVariables"});
            _model.declared.variables = count_attribute(section, "nbVariables");
            std::set<string> seen;
            for (auto n : elements(section)) {
                if (name_of(n) != "variable")
                    fail(n, fmt::format("unexpected <{}> in <variables>", name_of(n)));
                check_attributes(n, {"name", "domain"});
                VariableDef v;
                v.name = required(n, "name");
                v.domain_ref = required(n, "domain");
                if (! seen.insert(v.name).second)
                    fail(n, fmt::format("duplicate variable name '{}'", v.name));
                _model.variables.push_back(move(v));
            }
        }

        void read_relations(Node * section)
        {
            check_attributes(section, {"nbRelations"});
            _model.declared.relations = count_attribute(section, "nbRelations");
            for (auto n : elements(section)) {
                if (name_of(n) != "relation")
                    fail(n, fmt::format("unexpected <{}> in <relations>", name_of(n)));
                if (attribute(n, "defaultCost"))
                    reject_extension(n, "weighted constraints (WCSP)");
                check_attributes(n, {"name", "arity", "nbTuples", "semantics"});
                RelationDef r;
                r.name = required(n, "name");
                if (is_reference_name_taken(r.name))
                    fail(n, fmt::format("duplicate relation name '{}'", r.name));
                auto arity = integer_attribute(n, "arity", required(n, "arity"));
                if (arity <= 0)
                    fail(n, "relation arity must be positive");
                r.arity = static_cast<std::size_t>(arity);
                auto semantics = required(n, "semantics");
                if (semantics == "supports")
                    r.semantics = Semantics::supports;
                else if (semantics == "conflicts")
                    r.semantics = Semantics::conflicts;
                else if (semantics == "soft")
                    reject_extension(n, "weighted constraints (WCSP)");
                else
                    fail(n, fmt::format("unknown relation semantics '{}'", semantics));
                r.declared_count = count_attribute(n, "nbTuples");
                auto text = text_of(n);
                r.tuples = abridged(n, [&] { return parse_tuples(text, r.arity); });
                _model.relations.push_back(move(r));
            }
        }

        auto is_reference_name_taken(const string & name) const -> bool
        {
            return std::any_of(_model.relations.begin(), _model.relations.end(), [&](auto & r) { return r.name == name; })
                || std::any_of(_model.predicates.begin(), _model.predicates.end(), [&](auto & p) { return p.name == name; });
        }

        void read_predicates(Node * section)
        {
            check_attributes(section, {"nbPredicates"});
            _model.declared.predicates = count_attribute(section, "nbPredicates");
            for (auto n : elements(section)) {
                if (name_of(n) != "predicate")
                    fail(n, fmt::format("unexpected <{}> in <predicates>", name_of(n)));
                check_attributes(n, {"name"});
                PredicateDef p;
                p.name = required(n, "name");
                if (is_reference_name_taken(p.name))
                    fail(n, fmt::format("duplicate predicate name '{}'", p.name));

                Node * params = nullptr, * expression = nullptr;
                for (auto c : elements(n)) {
                    if (name_of(c) == "parameters")
                        params = c;
                    else if (name_of(c) == "expression")
                        expression = c;
                    else
                        fail(c, fmt::format("unexpected <{}> in <predicate>", name_of(c)));
                }
                if (! params)
                    fail(n, fmt::format("predicate '{}' has no <parameters>", p.name));
                if (! expression)
                    fail(n, fmt::format("predicate '{}' has no <expression>", p.name));

                auto words = split_whitespace(text_of(params));
                if (words.size() % 2 != 0)
                    fail(params, "formal parameters must be 'type name' pairs");
                for (std::size_t i = 0; i < words.size(); i += 2) {
                    if (words[i] != "int")
                        fail(params, fmt::format("unsupported parameter type '{}'", words[i]));
                    if (std::find(p.formal_params.begin(), p.formal_params.end(), words[i + 1]) != p.formal_params.end())
                        fail(params, fmt::format("duplicate formal parameter '{}'", words[i + 1]));
                    p.formal_params.push_back(words[i + 1]);
                }

                Node * functional = nullptr;
                for (auto c : elements(expression)) {
                    if (name_of(c) == "functional")
                        functional = c;
                    else
                        _model.warnings.push_back(fmt::format("{}: ignoring <{}> expression representation", where(c), name_of(c)));
                }
                if (! functional)
                    fail(expression, "only the <functional> expression representation is supported");
                auto text = text_of(functional);
                p.body = abridged(functional, [&] { return parse_functional(text, p.formal_params); });
                _model.predicates.push_back(move(p));
            }
        }

        void read_constraints(Node * section)
        {
            if (attribute(section, "maximalCost") || attribute(section, "initialCost"))
                reject_extension(section, "weighted constraints (WCSP)");
            check_attributes(section, {"nbConstraints"});
            _model.declared.constraints = count_attribute(section, "nbConstraints");
            for (auto n : elements(section)) {
                if (name_of(n) != "constraint")
                    fail(n, fmt::format("unexpected <{}> in <constraints>", name_of(n)));
                read_constraint(n);
            }
        }

        void read_constraint(Node * n)
        {
            check_attributes(n, {"name", "arity", "scope", "reference"});
            ConstraintDef c;
            c.name = required(n, "name");
            if (! _constraint_names.insert(c.name).second)
                fail(n, fmt::format("duplicate constraint name '{}'", c.name));
            auto arity = integer_attribute(n, "arity", required(n, "arity"));
            if (arity <= 0)
                fail(n, "constraint arity must be positive");
            c.arity = static_cast<std::size_t>(arity);
            c.scope = split_whitespace(required(n, "scope"));
            c.reference = required(n, "reference");

            for (auto child : elements(n)) {
                if (name_of(child) != "parameters")
                    fail(child, fmt::format("unexpected <{}> in <constraint>", name_of(child)));
                if (c.effective_params)
                    fail(child, "duplicate <parameters>");
                vector<string> tokens;
                for (auto p = child->first_node(); p; p = p->next_sibling()) {
                    if (p->type() == rapidxml::node_data || p->type() == rapidxml::node_cdata)
                        abridged(child, [&] { tokenise_params({p->value(), p->value_size()}, tokens); return 0; });
                    else if (p->type() == rapidxml::node_element) {
                        if (p->first_node())
                            fail(p, fmt::format("<{}> inside <parameters> must be empty", name_of(p)));
                        tokens.push_back(fmt::format("<{}/>", name_of(p)));
                    }
                }
                c.effective_params = abridged(child, [&] { return params_from_tokens(tokens); });
            }
            _model.constraints.push_back(move(c));
        }
    };
}

auto Param::integer(Integer v) -> Param
{
    Param p;
    p.kind = Kind::integer;
    p.value = v;
    return p;
}

auto Param::identifier(string name) -> Param
{
    Param p;
    p.kind = Kind::identifier;
    p.name = move(name);
    return p;
}

auto InstanceModel::operator==(const InstanceModel & other) const -> bool
{
    return name == other.name && domains == other.domains && variables == other.variables
        && relations == other.relations && predicates == other.predicates
        && constraints == other.constraints && declared == other.declared;
}

auto xsolve::parse_instance(string_view document) -> InstanceModel
{
    return DocumentReader{document}.read();
}

auto xsolve::parse_tuples(string_view text, std::size_t arity) -> vector<Tuple>
{
    vector<Tuple> result;
    if (trim(text).empty())
        return result;

    std::size_t group = 0, pos = 0;
    while (true) {
        auto bar = text.find('|', pos);
        auto piece = text.substr(pos, bar == string_view::npos ? string_view::npos : bar - pos);
        Tuple t;
        for (auto & word : split_whitespace(piece))
            t.push_back(parse_integer(word));
        if (t.size() != arity)
            throw FormatError(fmt::format("tuple {} has {} value(s), expected {}", group, t.size(), arity));
        result.push_back(move(t));
        ++group;
        if (bar == string_view::npos)
            break;
        pos = bar + 1;
    }
    return result;
}

auto xsolve::parse_param_text(string_view text) -> vector<Param>
{
    vector<string> tokens;
    tokenise_params(text, tokens);
    return params_from_tokens(tokens);
}
