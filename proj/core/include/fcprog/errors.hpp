#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fcprog {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input that could not be parsed (CSV, config). Carries a 1-based line number
/// when one is known (0 = not applicable). CLI maps this family to exit code 2.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t line_no = 0)
        : Error(line_no ? what + " (line " + std::to_string(line_no) + ")" : what),
          line(line_no) {}
    std::size_t line;
};

/// Numeric / pipeline failures. CLI maps these to exit code 3.
struct NumericError : Error {
    using Error::Error;
};

struct NonFiniteError : NumericError {
    using NumericError::NumericError;
};
struct ConstantSeriesError : NumericError {
    using NumericError::NumericError;
};
struct TooShortError : NumericError {
    using NumericError::NumericError;
};
struct InsufficientExtremaError : NumericError {
    using NumericError::NumericError;
};
struct EmptyBinsError : NumericError {
    using NumericError::NumericError;
};
struct ShapeMismatchError : NumericError {
    using NumericError::NumericError;
};
struct UnknownSymbolError : NumericError {
    using NumericError::NumericError;
};
struct InsufficientDataError : NumericError {
    using NumericError::NumericError;
};
struct DivergedLossError : NumericError {
    using NumericError::NumericError;
};
struct InsufficientHistoryError : NumericError {
    using NumericError::NumericError;
};
struct AllModelsNonCrossingError : NumericError {
    using NumericError::NumericError;
};
struct EmptySamplesError : NumericError {
    using NumericError::NumericError;
};
struct EmptyEntriesError : NumericError {
    using NumericError::NumericError;
};
struct ZeroTrueRulError : NumericError {
    using NumericError::NumericError;
};
struct BadSpecError : NumericError {
    using NumericError::NumericError;
};

}  // namespace fcprog
