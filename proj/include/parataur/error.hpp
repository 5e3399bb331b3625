#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace parataur {

// Every failure the library reports carries one of these kinds so callers
// (notably the CLI) can surface a stable name such as "OpenBounds".
enum class ErrorKind {
    Syntax,
    UnknownIdentifier,
    MalformedBounds,
    MalformedModel,
    NotLU,
    OpenBounds,
    UnboundedUniversality,
    Unbounded,
    NotAZone,
    EmptyInitial,
    EnumerationCap,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace parataur
