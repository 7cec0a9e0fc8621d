#include "fermatkit/error.hpp"

namespace fermatkit {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::BackendMismatch: return "BackendMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NonExactExponential: return "NonExactExponential";
    case ErrorCode::DuplicateExponential: return "DuplicateExponential";
    case ErrorCode::NotRepresentable: return "NotRepresentable";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::InvalidOperator: return "InvalidOperator";
    case ErrorCode::InvalidEquation: return "InvalidEquation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EvenK: return "EvenK";
    case ErrorCode::NonPolynomialQuotient: return "NonPolynomialQuotient";
    case ErrorCode::ConsistencyFailure: return "ConsistencyFailure";
    case ErrorCode::DegenerateParameters: return "DegenerateParameters";
    case ErrorCode::ExclusionViolated: return "ExclusionViolated";
    case ErrorCode::LeadingCoefficientZero: return "LeadingCoefficientZero";
    case ErrorCode::ZeroW: return "ZeroW";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SchemaError: return "SchemaError";
    }
    return "UnknownError";
}

} // namespace fermatkit
