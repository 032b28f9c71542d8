#include <xsolve/errors.hh>

#include <fmt/core.h>

using namespace xsolve;

ParseError::ParseError(const std::string & message, int line, int column) :
    Error(fmt::format("{}:{}: {}", line, column, message)),
    _line(line),
    _column(column)
{
}

UnsupportedExtension::UnsupportedExtension(const std::string & what) :
    StructuralError("unsupported extension: " + what)
{
}
