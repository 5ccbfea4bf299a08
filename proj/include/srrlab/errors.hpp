#pragma once

#include <stdexcept>
#include <string>

namespace srrlab {

// Error taxonomy mirrors the CLI exit codes:
//   usage 1, parse 2, cap refusal 3, internal invariant 4.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& m) : std::runtime_error(m) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& m) : std::runtime_error(m) {}
};

struct CapError : std::runtime_error {
    explicit CapError(const std::string& m) : std::runtime_error(m) {}
};

struct InternalError : std::runtime_error {
    explicit InternalError(const std::string& m) : std::runtime_error(m) {}
};

inline void internal_check(bool cond, const std::string& what) {
    if (!cond) throw InternalError("internal invariant violated: " + what);
}

} // namespace srrlab
