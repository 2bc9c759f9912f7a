#pragma once

#include <stdexcept>
#include <string>

namespace supergeom {

enum class ErrorKind {
    ring_mismatch,
    unknown_variable,
    not_homogeneous,
    parity,
    singular_block,
    precondition,
    limit_exceeded,
    parse,
    internal,
};

inline const char *to_string(ErrorKind k) noexcept
{
    switch (k) {
    case ErrorKind::ring_mismatch: return "ring-mismatch";
    case ErrorKind::unknown_variable: return "unknown-variable";
    case ErrorKind::not_homogeneous: return "not-homogeneous";
    case ErrorKind::parity: return "parity";
    case ErrorKind::singular_block: return "singular-block";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::limit_exceeded: return "limit-exceeded";
    case ErrorKind::parse: return "parse";
    case ErrorKind::internal: return "internal";
    }
    return "unknown";
}

// All library failures are reported through this type; the kind decides how
// callers (notably the CLI) classify them.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string &what)
{
    if (!cond) fail(kind, what);
}

} // namespace supergeom
