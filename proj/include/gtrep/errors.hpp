#pragma once

#include <stdexcept>
#include <string>

namespace gtrep {

/// Base class of every domain error thrown by this library. `code()` is a
/// stable machine-readable tag; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

struct InvalidRow : Error {
    explicit InvalidRow(const std::string& msg) : Error("InvalidRow", msg) {}
};

struct NotLeftJustified : Error {
    explicit NotLeftJustified(const std::string& msg) : Error("NotLeftJustified", msg) {}
};

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& msg) : Error("ShapeMismatch", msg) {}
};

struct NotDominant : Error {
    NotDominant(const std::string& msg, int i, int k)
        : Error("NotDominant", msg), row(i), column(k) {}
    int row;
    int column;
};

struct NotGeneric : Error {
    NotGeneric(const std::string& msg, int i, int k, int j, int m)
        : Error("NotGeneric", msg), row_a(i), col_a(k), row_b(j), col_b(m) {}
    int row_a;
    int col_a;
    int row_b;
    int col_b;
};

struct InvalidSeries : Error {
    explicit InvalidSeries(const std::string& msg) : Error("InvalidSeries", msg) {}
};

struct DegeneratePoints : Error {
    explicit DegeneratePoints(const std::string& msg) : Error("DegeneratePoints", msg) {}
};

struct ImmutableTopRow : Error {
    explicit ImmutableTopRow(const std::string& msg) : Error("ImmutableTopRow", msg) {}
};

struct TruncationTooSmall : Error {
    explicit TruncationTooSmall(const std::string& msg) : Error("TruncationTooSmall", msg) {}
};

struct InvalidBranchingWeight : Error {
    explicit InvalidBranchingWeight(const std::string& msg)
        : Error("InvalidBranchingWeight", msg) {}
};

struct WrongPyramid : Error {
    explicit WrongPyramid(const std::string& msg) : Error("WrongPyramid", msg) {}
};

/// Malformed user input (files, flags); distinct from internal logic errors.
struct InvalidInput : Error {
    explicit InvalidInput(const std::string& msg) : Error("InvalidInput", msg) {}
};

} // namespace gtrep
