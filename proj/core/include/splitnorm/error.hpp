#pragma once

#include <stdexcept>
#include <string>

namespace splitnorm {

enum class ErrorCode {
    ParseError,
    NonRealInput,
    ZeroPolynomial,
    NegativeShift,
    InvalidSpec,
    InvalidOffsets,
    OddOrNonintegerP,
    OddP,
    NegativeNorm,
    TailDivergence,
    BudgetExceeded,
    POutOfRange,
    MissingInput,
    InapplicableHypothesis,
    UnverifiedPositivity,
    GridOverflow,
    InvalidArgument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace splitnorm
