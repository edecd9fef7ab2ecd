#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lgkac {

enum class ErrorKind {
    invalid_parameter,
    invalid_input,
    insufficient_data,
    configuration,
    degenerate_input,
    size_exceeded,
    parse_error,
    io_error,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure is reported through this type; `kind()` is what the
/// CLI serializes into its error JSON.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
    if (!condition) fail(kind, message);
}

} // namespace lgkac
