#ifndef XSOLVE_TESTS_FIXTURES_HH
#define XSOLVE_TESTS_FIXTURES_HH

#include <xsolve/compiler.hh>
#include <xsolve/xcsp_model.hh>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace xsolve::testing
{
    struct Loaded
    {
        ResolvedInstance instance;
        Problem problem;
    };

    inline auto load(const std::string & xml, const CompileOptions & options = {}) -> Loaded
    {
        auto instance = resolve_references(parse_instance(xml));
        auto problem = compile_instance(instance, options);
        return {std::move(instance), std::move(problem)};
    }

    inline auto corpus_dir() -> std::filesystem::path
    {
        return XSOLVE_CORPUS_DIR;
    }

    inline auto read_file(const std::filesystem::path & path) -> std::string
    {
        std::ifstream in{path, std::ios::binary};
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    /// A small instance over variables named x0, x1, ... sharing one domain.
    inline auto instance_xml(std::size_t nvars, const std::string & domain, const std::string & sections,
        const std::string & constraints) -> std::string
    {
        std::string vars;
        for (std::size_t i = 0; i < nvars; ++i)
            vars += "<variable name=\"x" + std::to_string(i) + "\" domain=\"D\"/>";
        return "<instance><presentation name=\"t\"/><domains><domain name=\"D\">" + domain + "</domain></domains><variables>" +
            vars + "</variables>" + sections + "<constraints>" + constraints + "</constraints></instance>";
    }

    /// n + 1 pigeons over holes 1..n, all different.
    inline auto pigeonhole_xml(std::size_t n) -> std::string
    {
        std::string scope;
        for (std::size_t i = 0; i <= n; ++i)
            scope += (i ? " x" : "x") + std::to_string(i);
        return instance_xml(n + 1, "1.." + std::to_string(n), "",
            "<constraint name=\"distinct\" arity=\"" + std::to_string(n + 1) + "\" scope=\"" + scope +
                "\" reference=\"global:alldifferent\"/>");
    }
}

#endif
