#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ybx {

// Error taxonomy, mapped to CLI exit codes by the front end:
//   ParseError -> 2, CapError -> 3, CheckError (failed predicate, with a
//   witness in the message) -> 1.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

class CapError : public Error {
public:
    explicit CapError(const std::string& msg) : Error(msg) {}
};

class CheckError : public Error {
public:
    explicit CheckError(const std::string& msg) : Error(msg) {}
};

namespace limits {
// Desk-scale defaults; every front-end flag that raises them feeds the
// corresponding parameter explicitly.
inline constexpr std::int64_t kMaxGroupOrder = 256;
inline constexpr std::int64_t kMaxBraceSize = 4096;
inline constexpr std::int64_t kMaxPermGroup = 100000;
inline constexpr std::int64_t kMaxProbeOrder = 9;
} // namespace limits

} // namespace ybx
