#pragma once

#include <stdexcept>
#include <string>

namespace fcm {

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed document. `location()` is a JSON pointer (or a byte offset for
/// syntax errors).
class ParseError : public Error
{
public:
    ParseError(const std::string& message, std::string location)
        : Error(location.empty() ? message : location + ": " + message), _location(std::move(location))
    {
    }

    const std::string& location() const noexcept { return _location; }

private:
    std::string _location;
};

class MissingSection : public ParseError
{
public:
    explicit MissingSection(const std::string& section)
        : ParseError("missing required section '" + section + "'", "/" + section), _section(section)
    {
    }

    const std::string& section() const noexcept { return _section; }

private:
    std::string _section;
};

class UnknownClass : public Error
{
public:
    explicit UnknownClass(const std::string& name) : Error("unknown class '" + name + "'") {}
};

class CompileError : public Error
{
public:
    enum class Kind { MissingSupporterBinding, InvalidModel };

    CompileError(Kind kind, const std::string& message) : Error(message), _kind(kind) {}

    Kind kind() const noexcept { return _kind; }

private:
    Kind _kind;
};

class NotEnabled : public Error
{
public:
    using Error::Error;
};

class CaseTerminated : public Error
{
public:
    explicit CaseTerminated(const std::string& caseId) : Error("case '" + caseId + "' has terminated") {}
};

class StaleOption : public Error
{
public:
    explicit StaleOption(const std::string& optionId)
        : Error("option '" + optionId + "' is not enabled in the current state")
    {
    }
};

class SchemaError : public Error
{
public:
    using Error::Error;
};

class VersionMismatch : public Error
{
public:
    VersionMismatch(const std::string& expected, const std::string& actual)
        : Error("snapshot was taken for model " + actual + " but the engine runs model " + expected)
    {
    }
};

} // namespace fcm
