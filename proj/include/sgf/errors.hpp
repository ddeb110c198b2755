#pragma once

#include <stdexcept>
#include <string>

namespace sgf {

// Caller violated a documented precondition.
struct PreconditionError : std::invalid_argument {
    explicit PreconditionError(const std::string& msg) : std::invalid_argument(msg) {}
};

// An edge function was queried outside its domain, or similar data errors.
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

// A structural guarantee failed (a lemma-level contradiction). The message
// carries a serialized instance so the case can be replayed.
struct BugReport : std::logic_error {
    explicit BugReport(const std::string& msg) : std::logic_error(msg) {}
};

// A boundary-target system has no solution; the message names the certificate.
struct Unsolvable : std::runtime_error {
    explicit Unsolvable(const std::string& msg) : std::runtime_error(msg) {}
};

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested k disjoint paths, only `achievable` exist.
struct NotEnoughPaths : std::runtime_error {
    int requested;
    int achievable;
    NotEnoughPaths(int req, int got)
        : std::runtime_error("requested " + std::to_string(req) + " disjoint paths, only " +
                             std::to_string(got) + " achievable"),
          requested(req), achievable(got) {}
};

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int ln, int col, const std::string& msg)
        : std::runtime_error("line " + std::to_string(ln) + ", col " + std::to_string(col) + ": " + msg),
          line(ln), column(col) {}
};

} // namespace sgf
