#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gic {

enum class ErrorCode {
    InvalidArgument,
    InvalidSnapshot,
    MismatchedSectors,
    SameMonth,
    EmptySet,
    MissingMonth,
    ParseError,
    DuplicateRow,
    MissingColumn,
    MissingSector,
    ShareOutOfRange,
    ShareRosterMismatch,
    TooLarge,
    NonIntegralWeight,
    EmptyPanel,
    LengthMismatch,
    NonPositiveAverage,
    EmptyGroup,
    OutOfRange,
    EmptySample,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library derives from Error. The CLI maps these
// to the "bad input" exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

struct Issue {
    ErrorCode code;
    std::string message;
};

// Aggregates every violation found during a validation pass. code() is the
// code of the first issue.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Issue> issues);

    const std::vector<Issue>& issues() const noexcept { return issues_; }
    bool has(ErrorCode code) const noexcept;

private:
    std::vector<Issue> issues_;
};

class ParseError : public Error {
public:
    ParseError(ErrorCode code, std::size_t row, std::string column, const std::string& message);

    // 1-based line number in the source, counting the header as line 1.
    std::size_t row() const noexcept { return row_; }
    const std::string& column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::string column_;
};

} // namespace gic
