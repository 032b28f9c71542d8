#ifndef XSOLVE_ERRORS_HH
#define XSOLVE_ERRORS_HH

#include <stdexcept>
#include <string>

namespace xsolve
{
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Malformed XML, carrying the 1-based position of the problem.
    class ParseError : public Error
    {
    public:
        ParseError(const std::string & message, int line, int column);

        [[nodiscard]] auto line() const -> int { return _line; }
        [[nodiscard]] auto column() const -> int { return _column; }

    private:
        int _line;
        int _column;
    };

    /// Bad abridged text: integer sets, tuple lists, functional expressions.
    class FormatError : public Error
    {
    public:
        using Error::Error;
    };

    /// Well-formed XML whose element structure is not a valid instance.
    class StructuralError : public Error
    {
    public:
        using Error::Error;
    };

    class UnsupportedExtension : public StructuralError
    {
    public:
        explicit UnsupportedExtension(const std::string & what);
    };

    class ResolutionError : public Error
    {
    public:
        using Error::Error;
    };

    class ArityError : public Error
    {
    public:
        using Error::Error;
    };

    class CompileError : public Error
    {
    public:
        using Error::Error;
    };
}

#endif
