#pragma once

#include <stdexcept>
#include <string>

namespace ncaas {

enum class Errc {
    ZeroInverse,
    LengthMismatch,
    ParamMismatch,
    GenerationMismatch,
    EmptyState,
    Incomplete,
    BadMagic,
    BadVersion,
    Truncated,
    DomainError,
    DivisionByZero,
    EmptyGrid,
};

const char* errc_name(Errc c);

/// Single exception type for all library failures; kind() tells callers
/// which contract was violated.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

} // namespace ncaas
