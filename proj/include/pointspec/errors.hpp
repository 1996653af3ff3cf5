#pragma once

#include <stdexcept>
#include <string>

namespace pointspec {

// Error taxonomy shared by all modules. Everything derives from Error so the
// CLI can map library failures to exit codes in one place.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MixedFieldError : Error {
    using Error::Error;
};
struct DivisionByZeroError : Error {
    DivisionByZeroError() : Error("division by zero") {}
};
struct ParseError : Error {
    int line = 0, column = 0;
    explicit ParseError(const std::string& msg, int line_ = 0, int col_ = 0)
        : Error(msg), line(line_), column(col_) {}
};
struct ShapeMismatchError : Error {
    using Error::Error;
};
struct IndexOutOfRangeError : Error {
    using Error::Error;
};
struct WrongArityError : Error {
    using Error::Error;
};
struct DuplicateIndexError : Error {
    using Error::Error;
};
struct DegreeMismatchError : Error {
    using Error::Error;
};
struct MissingDistanceError : Error {
    using Error::Error;
};
struct NonPositiveBinError : Error {
    NonPositiveBinError() : Error("histogram bin size must be positive") {}
};
struct TooLargeError : Error {
    using Error::Error;
};
struct RankDeficientError : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct SearchBudgetError : Error {
    using Error::Error;
};
struct AllVolumesZeroError : Error {
    AllVolumesZeroError() : Error("every spectrum value is zero: flat configurations only") {}
};

}  // namespace pointspec
