#include "splitnorm/error.hpp"

namespace splitnorm {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::NonRealInput: return "NonRealInput";
        case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorCode::NegativeShift: return "NegativeShift";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::InvalidOffsets: return "InvalidOffsets";
        case ErrorCode::OddOrNonintegerP: return "OddOrNonintegerP";
        case ErrorCode::OddP: return "OddP";
        case ErrorCode::NegativeNorm: return "NegativeNorm";
        case ErrorCode::TailDivergence: return "TailDivergence";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::POutOfRange: return "POutOfRange";
        case ErrorCode::MissingInput: return "MissingInput";
        case ErrorCode::InapplicableHypothesis: return "InapplicableHypothesis";
        case ErrorCode::UnverifiedPositivity: return "UnverifiedPositivity";
        case ErrorCode::GridOverflow: return "GridOverflow";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace splitnorm
