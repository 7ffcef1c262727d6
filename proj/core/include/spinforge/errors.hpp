#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spinforge {

// Every failure the library can raise, by contract name. Messages embed the
// enumerator text so callers (and the CLI) can surface it verbatim.
enum class ErrorCode {
    ZeroDenominator,       // scalar with den == 0
    DivisionByZero,        // field division by the zero scalar
    NotRepresentable,      // sqrt target has no representation in the field
    DimensionMismatch,     // particle counts / index ranges disagree
    SameParticle,          // pair operator with i == j
    ZeroState,             // operation undefined on the zero vector
    NormOutsideField,      // norm is not a field element; cannot normalize exactly
    NotNormalized,         // operation requires an exactly unit-norm state
    GridMismatch,          // orbitals sampled on different grids
    LabelPatternMismatch,  // orbital labels do not match the requested assembly case
    DuplicateTerm,         // state file repeats a basis term
    ParseError,            // malformed textual input (carries line/column)
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Parse failures point at the offending input position (1-based).
class ParseError : public Error {
public:
    ParseError(const std::string& detail, std::size_t line, std::size_t column)
        : Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(column) +
                    ": " + detail),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace spinforge
